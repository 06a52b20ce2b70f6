//! Single function values by name, for `mvlaguerre eval`.

use num_complex::Complex64;

use super::params::Params;
use crate::error::{Error, Result};
use crate::hypergeometric::{
    bessel_i, humbert_phi1_series, hyp1f1, hyp1f2, hyp2f1, lauricella_phi2k, le_roy, Phi1Params,
};
use crate::laguerre::{laguerre_multi, laguerre_neg_shift, laguerre_uni, multiple_laguerre_2nd};
use crate::series::SeriesControl;

#[derive(Debug, Clone, Copy)]
pub struct FunctionInfo {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub summary: &'static str,
}

pub const FUNCTIONS: &[FunctionInfo] = &[
    FunctionInfo { name: "laguerre_uni", params: &["n", "alpha", "x"], summary: "L_n^(α)(x)" },
    FunctionInfo { name: "laguerre_multi", params: &["n", "alpha", "x"], summary: "L_n^(α)(x), multi-index n, vector x" },
    FunctionInfo { name: "laguerre_neg_shift", params: &["n", "beta", "x"], summary: "L_n^(-β-⟨n⟩)(x)" },
    FunctionInfo { name: "multiple_laguerre_2nd", params: &["n", "alpha", "betas", "x"], summary: "multiple Laguerre polynomial of the second kind" },
    FunctionInfo { name: "phi1", params: &["a", "b", "c", "x", "y"], summary: "Humbert Φ₁[a,b;c;x,y]" },
    FunctionInfo { name: "phi2k", params: &["b", "c", "x"], summary: "Humbert Φ₂^(k)[b;c;x]" },
    FunctionInfo { name: "le_roy", params: &["gamma", "z"], summary: "Σ z^n/(n!)^γ" },
    FunctionInfo { name: "bessel_i_reg", params: &["alpha", "t"], summary: "I_α(t)/t^α" },
    FunctionInfo { name: "hyp1f1", params: &["a", "c", "z"], summary: "₁F₁(a;c;z)" },
    FunctionInfo { name: "hyp2f1", params: &["a", "b", "c", "z"], summary: "₂F₁(a,b;c;z)" },
    FunctionInfo { name: "hyp1f2", params: &["a", "b1", "b2", "z"], summary: "₁F₂(a;b1,b2;z)" },
];

/// Evaluates the function `name` at `params`.
pub fn evaluate_function(name: &str, p: &Params, ctl: &SeriesControl) -> Result<Complex64> {
    let entry = FUNCTIONS.iter().find(|f| f.name == name).ok_or_else(|| {
        let names: Vec<&str> = FUNCTIONS.iter().map(|f| f.name).collect();
        Error::Domain(format!("unknown function `{name}` (known: {})", names.join(", ")))
    })?;
    p.only(entry.params)?;
    ctl.validate()?;
    match name {
        "laguerre_uni" => Ok(laguerre_uni(p.uint("n")?, p.complex("alpha")?, p.complex("x")?)),
        "laguerre_multi" => laguerre_multi(&p.index("n")?, p.complex("alpha")?, &p.point("x")?),
        "laguerre_neg_shift" => laguerre_neg_shift(&p.index("n")?, p.complex("beta")?, &p.point("x")?),
        "multiple_laguerre_2nd" => {
            multiple_laguerre_2nd(&p.index("n")?, p.complex("alpha")?, &p.point("betas")?, p.complex("x")?)
        }
        "phi1" => {
            let params = Phi1Params::new(p.complex("a")?, p.complex("b")?, p.complex("c")?);
            humbert_phi1_series(params, p.complex("x")?, p.complex("y")?, ctl)
        }
        "phi2k" => lauricella_phi2k(&p.point("b")?, p.complex("c")?, &p.point("x")?, ctl),
        "le_roy" => le_roy(p.complex("gamma")?, p.complex("z")?, ctl),
        "bessel_i_reg" => bessel_i(p.complex("alpha")?, p.complex("t")?, ctl),
        "hyp1f1" => hyp1f1(p.complex("a")?, p.complex("c")?, p.complex("z")?, ctl),
        "hyp2f1" => hyp2f1(p.complex("a")?, p.complex("b")?, p.complex("c")?, p.complex("z")?, ctl),
        "hyp1f2" => hyp1f2(p.complex("a")?, p.complex("b1")?, p.complex("b2")?, p.complex("z")?, ctl),
        _ => unreachable!("every listed function is dispatched"),
    }
}

/// `re±im i` with 15 significant digits per part.
pub fn format_complex(z: Complex64) -> String {
    let round = |v: f64| format!("{v:.14e}").parse::<f64>().unwrap_or(v);
    let (re, im) = (round(z.re), round(z.im));
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{re}{sign}{}i", im.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(name: &str, args: &[&str]) -> Result<Complex64> {
        evaluate_function(name, &Params::from_args(args).unwrap(), &SeriesControl::inner())
    }

    #[test]
    fn known_values() {
        assert_eq!(eval("laguerre_uni", &["n=0", "alpha=0.3", "x=2"]).unwrap(), Complex64::new(1.0, 0.0));
        let e = eval("le_roy", &["gamma=1", "z=1"]).unwrap();
        assert!((e.re - std::f64::consts::E).abs() < 1e-15);
        let v = eval("laguerre_multi", &["n=1,1", "alpha=0", "x=1,1"]).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let f = eval("hyp1f1", &["a=1", "c=1", "z=0.5"]).unwrap();
        assert!((f.re - 0.5f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(eval("nope", &[]).is_err());
        assert!(eval("laguerre_uni", &["n=1", "alpha=0"]).is_err());
        assert!(eval("laguerre_uni", &["n=1", "alpha=0", "x=1", "y=2"]).is_err());
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(Complex64::new(1.0, 0.0)), "1+0i");
        assert_eq!(format_complex(Complex64::new(-0.5, -2.25)), "-0.5-2.25i");
        assert_eq!(format_complex(Complex64::new(1.0 / 3.0, 0.0)), "0.333333333333333+0i");
    }
}
