use crate::args::{ArithmeticKind, CommonArgs, Format, Mode};
use crate::error::CliError;
use dsop::numerics::{parse_scalar, parse_scalar_list};
use dsop::{Arithmetic, Scalar, WeightSpec};
use std::fmt;
use std::str::FromStr;

/// Smallest and largest accepted `--precision`.
pub const PRECISION_RANGE: (u32, u32) = (16, 1 << 16);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Meixner,
    Charlier,
    GenCharlier,
    Ghahn1,
    Hahn,
    Hypergeometric,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Meixner, Family::Charlier, Family::GenCharlier, Family::Ghahn1, Family::Hahn, Family::Hypergeometric];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Meixner => "meixner",
            Family::Charlier => "charlier",
            Family::GenCharlier => "gen-charlier",
            Family::Ghahn1 => "ghahn1",
            Family::Hahn => "hahn",
            Family::Hypergeometric => "hypergeometric",
        }
    }

    pub fn has_engine(&self) -> bool {
        matches!(self, Family::Meixner | Family::Ghahn1 | Family::Hahn)
    }

    pub fn has_closed_form(&self) -> bool {
        matches!(self, Family::Meixner | Family::Hahn)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Family, CliError> {
        let s = s.trim().to_ascii_lowercase();
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Family::ALL.iter().map(Family::name).collect();
            CliError::Usage(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// A validated weight: family plus parameter lists.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightArgs {
    pub family: Family,
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
    pub z: Scalar,
    pub spec: WeightSpec,
}

impl WeightArgs {
    /// Parses and checks the parameter counts each family expects.
    pub fn parse(family: &str, a: &str, b: &str, z: Option<&str>) -> Result<WeightArgs, CliError> {
        let family: Family = family.parse()?;
        let a = parse_scalar_list(a).map_err(|e| CliError::Usage(format!("--a: {e}")))?;
        let b = parse_scalar_list(b).map_err(|e| CliError::Usage(format!("--b: {e}")))?;
        let z = z.map(|s| parse_scalar(s).map_err(|e| CliError::Usage(format!("--z: {e}")))).transpose()?;
        let (na, nb) = match family {
            Family::Meixner => (Some(1), 0),
            Family::Charlier => (Some(0), 0),
            Family::GenCharlier => (Some(0), 1),
            Family::Ghahn1 | Family::Hahn => (Some(2), 1),
            Family::Hypergeometric => (None, b.len()),
        };
        if na.is_some_and(|na| na != a.len()) || nb != b.len() {
            return Err(CliError::Usage(format!(
                "{family} takes {} --a value(s) and {nb} --b value(s), got {} and {}",
                na.unwrap_or(0),
                a.len(),
                b.len()
            )));
        }
        let z = match (family, z) {
            (Family::Hahn, None) => Scalar::one(),
            (Family::Hahn, Some(z)) if z.is_one() => z,
            (Family::Hahn, Some(z)) => {
                return Err(CliError::Usage(format!("hahn has z = 1, got --z {z}; use --family ghahn1")));
            }
            (Family::Ghahn1, Some(z)) if z.is_one() => {
                return Err(CliError::Usage(
                    "ghahn1 requires z != 1 (the first Laguerre-Freud equation divides by 1 - z); use --family hahn".into(),
                ));
            }
            (_, Some(z)) => z,
            (_, None) => return Err(CliError::Usage(format!("{family} needs --z"))),
        };
        let spec = WeightSpec::new(a.clone(), b.clone(), z.clone())?;
        Ok(WeightArgs { family, a, b, z, spec })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub weight: WeightArgs,
    pub n: usize,
    pub mode: Mode,
    pub arithmetic: Arithmetic,
    pub digits: usize,
    pub format: Format,
    pub seeds: Option<(Scalar, Scalar)>,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<RunConfig, CliError> {
        let weight = WeightArgs::parse(&args.family, &args.a, &args.b, args.z.as_deref())?;
        let family = weight.family;
        let mode = match args.mode {
            Some(Mode::Lf) if !family.has_engine() => {
                return Err(CliError::Usage(format!("{family} has no Laguerre-Freud engine; use --mode oracle")));
            }
            Some(Mode::Closed) if !family.has_closed_form() => {
                return Err(CliError::Usage(format!("{family} has no closed form; use --mode oracle")));
            }
            Some(m) => m,
            None if family.has_engine() => Mode::Lf,
            None => Mode::Oracle,
        };
        let (lo, hi) = PRECISION_RANGE;
        if !(lo..=hi).contains(&args.precision) {
            return Err(CliError::Usage(format!("--precision must lie in {lo}..={hi}, got {}", args.precision)));
        }
        if args.digits == 0 {
            return Err(CliError::Usage("--digits must be positive".into()));
        }
        let arithmetic = match args.arithmetic {
            ArithmeticKind::Rational => Arithmetic::Exact,
            ArithmeticKind::Float => Arithmetic::float(args.precision),
        };
        let seeds = match &args.seeds {
            None => None,
            Some(_) if !(family == Family::Ghahn1 && mode == Mode::Lf) => {
                return Err(CliError::Usage("--seeds applies to --family ghahn1 --mode lf only".into()));
            }
            Some(s) => {
                let v = parse_scalar_list(s).map_err(|e| CliError::Usage(format!("--seeds: {e}")))?;
                let [b0, g1] = <[Scalar; 2]>::try_from(v)
                    .map_err(|v| CliError::Usage(format!("--seeds takes beta0,gamma1, got {} values", v.len())))?;
                Some((arithmetic.lift(&b0)?, arithmetic.lift(&g1)?))
            }
        };
        Ok(RunConfig { weight, n: args.n, mode, arithmetic, digits: args.digits, format: args.format, seeds })
    }

    pub fn precision_bits(&self) -> Option<u32> {
        self.arithmetic.precision()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!(matches!("laguerre".parse::<Family>(), Err(CliError::Usage(_))));
    }

    #[test]
    fn parameter_counts() {
        assert!(WeightArgs::parse("meixner", "1", "", Some("1/2")).is_ok());
        assert!(WeightArgs::parse("meixner", "1,2", "", Some("1/2")).is_err());
        assert!(WeightArgs::parse("meixner", "1", "", None).is_err());
        let h = WeightArgs::parse("hahn", "1,-4", "-5", None).unwrap();
        assert!(h.z.is_one());
        assert!(WeightArgs::parse("hahn", "1,1", "5", Some("1/2")).is_err());
        assert!(WeightArgs::parse("hypergeometric", "1,2,3", "4,5", Some("1/3")).is_ok());
    }

    #[test]
    fn ghahn_rejects_unit_z() {
        let Err(CliError::Usage(msg)) = WeightArgs::parse("ghahn1", "1,1", "1", Some("1")) else {
            panic!("expected usage error");
        };
        assert!(msg.contains("--family hahn"));
    }
}
