//! Scalar and multivariable hypergeometric functions.

mod bessel;
mod humbert;
mod lauricella;
mod le_roy;
mod scalar;

pub use bessel::bessel_i;
pub use humbert::{
    check_integral_strip, humbert_phi1_double_sum, humbert_phi1_integral, humbert_phi1_integral_auto,
    humbert_phi1_series, humbert_phi1_single_sum, phi1_at_unit_x, phi1_neg1_split, Phi1Params,
    SINGLE_SUM_THRESHOLD,
};
pub use lauricella::lauricella_phi2k;
pub use le_roy::{le_roy, le_roy_asymptotic, le_roy_asymptotic_ln, le_roy_scaled, le_roy_series, ASYMPTOTIC_SWITCH};
pub use scalar::{hyp1f1, hyp1f2, hyp2f1, kummer_value};
