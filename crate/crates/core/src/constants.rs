//! Conventions frozen by the calibration searches. Each one is re-derived by a test
//! (and by `calibrate`) so a drift in the algebra code shows up as a mismatch here.

use crate::jordan_similitudes::{MoufangMap, MoufangPlacement};
use crate::octonion::ZornSigns;

/// Sign pattern of the Zorn product for which the norm is multiplicative.
pub const ZORN_SIGNS: ZornSigns = ZornSigns { wedge_in_v: -1, wedge_in_w: 1 };

/// Slot placement of the Moufang maps for which the block map is a similitude of the cubic
/// norm: `z -> conj(u) z conj(u)`, `L_u`, `R_u`.
pub const MOUFANG_PLACEMENT: MoufangPlacement = MoufangPlacement {
    slots: [MoufangMap::Sandwich, MoufangMap::Left, MoufangMap::Right],
    conjugate_u: [true, false, false],
};

/// Sign of the skew form on the Brown algebra: `b(e1, e2) = 1`.
pub const BROWN_B_SIGN: i64 = 1;

/// `(c1, c2, c4)` of the quartic form as `(numerator, denominator)`. The calibration grid has
/// one other success, `c2 = -2`, which is this one pulled back along `(alpha, beta) -> (-alpha, -beta)`.
pub const BROWN_QUARTIC: [(i64, i64); 3] = [(-1, 2), (2, 1), (2, 1)];
