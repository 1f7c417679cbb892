use crate::{Error, Result};

/// Photon-number configuration at the two input ports of a two-photon
/// interference test, with the splitter's intensity reflectance and transmittance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomInputs {
    pub p11: f64,
    pub p20: f64,
    pub p02: f64,
    pub r2: f64,
    pub t2: f64,
}

impl HomInputs {
    /// Independent sources with photon-number distributions `first` and `second`.
    pub fn from_pmfs(first: &[f64], second: &[f64], r2: f64) -> Self {
        let at = |pmf: &[f64], n: usize| pmf.get(n).copied().unwrap_or(0.0);
        Self {
            p11: at(first, 1) * at(second, 1),
            p20: at(first, 2) * at(second, 0),
            p02: at(first, 0) * at(second, 2),
            r2,
            t2: 1.0 - r2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p11", self.p11), ("p20", self.p20), ("p02", self.p02)] {
            if !(p >= 0.0 && p.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {p} must be >= 0"
                )));
            }
        }
        if !(self.r2 > 0.0 && self.t2 > 0.0) || (self.r2 + self.t2 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "splitting ratio r2 = {}, t2 = {} must be in (0, 1) and sum to 1",
                self.r2, self.t2
            )));
        }
        Ok(())
    }
}

/// Maximal dip visibility `P11 / (P20 + P02 + (r² + t²)/(2rt) · P11)`.
///
/// `r` and `t` enter through the intensity coefficients `r2` and `t2`
/// themselves; this is the reading under which an unbalanced splitter
/// limits the visibility as observed.
pub fn hom_visibility(inp: &HomInputs) -> Result<f64> {
    inp.validate()?;
    if inp.p11 == 0.0 && inp.p20 == 0.0 && inp.p02 == 0.0 {
        return Err(Error::Undefined(
            "all input configurations have zero probability",
        ));
    }
    let (r, t) = (inp.r2, inp.t2);
    let imbalance = (r * r + t * t) / (2.0 * r * t);
    Ok(inp.p11 / (inp.p20 + inp.p02 + imbalance * inp.p11))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_pairs_are_perfect_at_balance() {
        let inp = HomInputs {
            p11: 0.3,
            p20: 0.0,
            p02: 0.0,
            r2: 0.5,
            t2: 0.5,
        };
        assert!((hom_visibility(&inp).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn all_zero_is_undefined() {
        let inp = HomInputs {
            p11: 0.0,
            p20: 0.0,
            p02: 0.0,
            r2: 0.5,
            t2: 0.5,
        };
        assert!(matches!(hom_visibility(&inp), Err(Error::Undefined(_))));
    }

    #[test]
    fn rejects_bad_ratio() {
        let inp = HomInputs {
            p11: 0.1,
            p20: 0.0,
            p02: 0.0,
            r2: 0.6,
            t2: 0.5,
        };
        assert!(hom_visibility(&inp).is_err());
    }

    #[test]
    fn pmf_products() {
        let inp = HomInputs::from_pmfs(&[0.5, 0.4, 0.1], &[0.9, 0.1], 0.5);
        assert!((inp.p11 - 0.04).abs() < 1e-15);
        assert!((inp.p20 - 0.09).abs() < 1e-15);
        assert_eq!(inp.p02, 0.0);
    }
}
