//! Weyl groups of simply-laced root systems acting on minuscule weight orbits, and the
//! count of parabolic double cosets `W_P \ W / W_P` as `W_P`-orbits on `W / W_P`.
//!
//! Nodes use Bourbaki numbering, 1-based. The parabolic attached to a node `i` is the one
//! whose Weyl group is generated by every simple reflection except `s_i`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A(usize),
    D(usize),
    E6,
    E7,
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) | RootType::D(n) => n,
            RootType::E6 => 6,
            RootType::E7 => 7,
        }
    }

    /// Parses `A4`, `D6`, `E7`, case-insensitive.
    pub fn parse(s: &str) -> Option<RootType> {
        let s = s.trim().to_ascii_uppercase();
        let (head, tail) = s.split_at(s.char_indices().nth(1)?.0);
        let n: usize = tail.parse().ok()?;
        match (head, n) {
            ("A", n) if n >= 1 => Some(RootType::A(n)),
            ("D", n) if n >= 4 => Some(RootType::D(n)),
            ("E", 6) => Some(RootType::E6),
            ("E", 7) => Some(RootType::E7),
            _ => None,
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E6 => write!(f, "E6"),
            RootType::E7 => write!(f, "E7"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("node {node} is not a node of {root_type} (nodes are 1..={rank})")]
    InvalidNode { root_type: RootType, node: usize, rank: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemData {
    pub root_type: RootType,
    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`, 0-based indices for Bourbaki nodes `i + 1`, `j + 1`.
    pub cartan: Vec<Vec<i64>>,
}

impl RootSystemData {
    pub fn new(root_type: RootType) -> Self {
        let n = root_type.rank();
        let edges: Vec<(usize, usize)> = match root_type {
            RootType::A(n) => (1..n).map(|i| (i, i + 1)).collect(),
            RootType::D(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                e
            }
            RootType::E6 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
            RootType::E7 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
        };
        let mut cartan = vec![vec![0; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in edges {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }
        RootSystemData { root_type, cartan }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    fn check_node(&self, node: usize) -> Result<(), WeylError> {
        if node == 0 || node > self.rank() {
            return Err(WeylError::InvalidNode { root_type: self.root_type, node, rank: self.rank() });
        }
        Ok(())
    }

    /// `s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i` in fundamental-weight coordinates.
    pub fn reflect(&self, i: usize, weight: &[i64]) -> Vec<i64> {
        let c = weight[i];
        weight.iter().enumerate().map(|(k, w)| w - c * self.cartan[i][k]).collect()
    }

    /// Coxeter exponent `m_ij` for a simply-laced diagram.
    pub fn coxeter_exponent(&self, i: usize, j: usize) -> usize {
        match (i == j, self.cartan[i][j]) {
            (true, _) => 1,
            (false, 0) => 2,
            _ => 3,
        }
    }

    /// Diagram automorphisms as permutations of 1-based node labels (index 0 unused).
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let id: Vec<usize> = (0..=n).collect();
        let mut out = vec![id.clone()];
        match self.root_type {
            RootType::A(n) if n > 1 => out.push((0..=n).map(|i| if i == 0 { 0 } else { n + 1 - i }).collect()),
            RootType::D(n) => {
                let mut p = id;
                p.swap(n - 1, n);
                out.push(p);
            }
            RootType::E6 => {
                let mut p = id;
                p.swap(1, 6);
                p.swap(3, 5);
                out.push(p);
            }
            _ => {}
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightOrbit {
    pub weights: Vec<Vec<i64>>,
    /// `generator_action[i][k]` is the index of `s_{i+1}(weights[k])`.
    pub generator_action: Vec<Vec<usize>>,
}

impl WeightOrbit {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Every Coxeter relation `(s_i s_j)^{m_ij} = 1` as a permutation of the orbit.
    pub fn braid_relations_hold(&self, system: &RootSystemData) -> bool {
        let n = system.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let m = system.coxeter_exponent(i, j);
                (0..self.len()).all(|k| {
                    let mut x = k;
                    for _ in 0..m {
                        x = self.generator_action[i][self.generator_action[j][x]];
                    }
                    x == k
                })
            })
        })
    }
}

/// W-orbit of the fundamental weight `omega_node` by worklist closure.
pub fn weight_orbit(system: &RootSystemData, node: usize) -> Result<WeightOrbit, WeylError> {
    system.check_node(node)?;
    let n = system.rank();
    let mut seed = vec![0; n];
    seed[node - 1] = 1;
    let mut index = HashMap::from([(seed.clone(), 0usize)]);
    let mut weights = vec![seed];
    let mut k = 0;
    while k < weights.len() {
        for i in 0..n {
            let w = system.reflect(i, &weights[k]);
            if !index.contains_key(&w) {
                index.insert(w.clone(), weights.len());
                weights.push(w);
            }
        }
        k += 1;
    }
    let generator_action = (0..n).map(|i| weights.iter().map(|w| index[&system.reflect(i, w)]).collect()).collect();
    Ok(WeightOrbit { weights, generator_action })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOrbits {
    pub root_type: RootType,
    pub node: usize,
    pub orbit_size: usize,
    pub double_cosets: usize,
    /// Sizes of the `W_P`-orbits on `W / W_P`, largest first.
    pub partition: Vec<usize>,
}

impl PairOrbits {
    pub fn partition_sums(&self) -> bool {
        self.partition.iter().sum::<usize>() == self.orbit_size
    }
}

/// Orbits of `W_P = <s_j : j != node>` on the orbit of `omega_node`.
pub fn parabolic_pair_orbits(system: &RootSystemData, node: usize) -> Result<PairOrbits, WeylError> {
    let orbit = weight_orbit(system, node)?;
    let mut label = vec![usize::MAX; orbit.len()];
    let mut partition = Vec::new();
    for start in 0..orbit.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let class = partition.len();
        label[start] = class;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(k) = stack.pop() {
            size += 1;
            for (i, action) in orbit.generator_action.iter().enumerate() {
                let next = action[k];
                if i + 1 != node && label[next] == usize::MAX {
                    label[next] = class;
                    stack.push(next);
                }
            }
        }
        partition.push(size);
    }
    partition.sort_unstable_by(|a, b| b.cmp(a));
    Ok(PairOrbits {
        root_type: system.root_type,
        node,
        orbit_size: orbit.len(),
        double_cosets: partition.len(),
        partition,
    })
}

pub fn parabolic_pair_orbit_count(system: &RootSystemData, node: usize) -> Result<usize, WeylError> {
    Ok(parabolic_pair_orbits(system, node)?.double_cosets)
}
