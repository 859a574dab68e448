//! Generated by `eq2 calibrate --write`; do not edit by hand.
//!
//! The reading of the hypergeometric formula selected by the calibration
//! suite: the only one of the 64 candidates that reproduces the generators
//! at `l = 1/2`, has a diagonal counit for `l <= 2` and is a
//! corepresentation for `l <= 3/2`.

use crate::su::{ArgumentSign, BinomialIndex, Convention, PowerGenerator, Prefactor, SecondParam, ThirdParam};

pub const CALIBRATED: Convention = Convention {
    prefactor: Prefactor::IMinusJTimesOneMinusLMinusJ,
    binomial: BinomialIndex::IMinusJ,
    second: SecondParam::LMinusJPlusOne,
    third: ThirdParam::OnePlusIMinusJ,
    argument: ArgumentSign::Plus,
    power: PowerGenerator::UStar,
};
