use affine_tail::bounds::{
    baseline_rhs, chernoff_mult_equiv_rhs, chernoff_mult_rhs, cor1_bound, cor1_threshold, cor2_eval, cor2_threshold,
    cor3_rhs, cor3_threshold, rs13_rhs, theorem1_rhs, theorem1_threshold, BaselineKind, EpsilonFamily,
};
use affine_tail::{BoundValue, CorollaryQuery, Error, MeanKnownQuery, Sign, TheoremQuery, ThresholdSpec};
use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Ineq {
    Theorem1,
    Cor1,
    Cor2,
    Cor3,
    Rs13,
    ChernoffMult,
    Azuma,
    Hoeffding,
    Bernstein,
    Bennett,
}

impl Ineq {
    pub fn name(self) -> &'static str {
        match self {
            Ineq::Theorem1 => "theorem1",
            Ineq::Cor1 => "cor1",
            Ineq::Cor2 => "cor2",
            Ineq::Cor3 => "cor3",
            Ineq::Rs13 => "rs13",
            Ineq::ChernoffMult => "chernoff_mult",
            Ineq::Azuma => "azuma",
            Ineq::Hoeffding => "hoeffding",
            Ineq::Bernstein => "bernstein",
            Ineq::Bennett => "bennett",
        }
    }

    fn baseline(self) -> Option<BaselineKind> {
        match self {
            Ineq::Azuma => Some(BaselineKind::Azuma),
            Ineq::Hoeffding => Some(BaselineKind::Hoeffding),
            Ineq::Bernstein => Some(BaselineKind::Bernstein),
            Ineq::Bennett => Some(BaselineKind::Bennett),
            _ => None,
        }
    }
}

/// Inequality parameters; which ones are required depends on `--ineq`.
#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    /// Slope parameter of the base inequality.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Offset parameter of the base inequality.
    #[arg(long)]
    pub b: Option<f64>,
    /// Deviation scale.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// A-priori guess of the bias statistic (for chernoff_mult: the relative deviation).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    /// Direction: + or -.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<Sign>,
    /// Average of the expected values.
    #[arg(long)]
    pub p: Option<f64>,
    /// Per-variable means, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub means: Option<Vec<f64>>,
    /// Per-step variance for bernstein and bennett.
    #[arg(long)]
    pub variance: Option<f64>,
}

pub fn need<T: Copy>(v: Option<T>, flag: &str, ineq: Ineq) -> Result<T, Error> {
    v.ok_or_else(|| Error::Usage(format!("--{flag} is required for --ineq {}", ineq.name())))
}

impl Params {
    fn sign(&self, ineq: Ineq) -> Result<Sign, Error> {
        need(self.s, "s", ineq)
    }

    fn corollary(&self, ineq: Ineq, n: u64) -> Result<CorollaryQuery, Error> {
        CorollaryQuery::new(
            n,
            need(self.epsilon, "epsilon", ineq)?,
            need(self.delta, "delta", ineq)?,
            self.sign(ineq)?,
        )
    }

    fn mean_known(&self, ineq: Ineq, n: u64) -> Result<MeanKnownQuery, Error> {
        MeanKnownQuery::new(
            n,
            need(self.p, "p", ineq)?,
            need(self.epsilon, "epsilon", ineq)?,
            self.sign(ineq)?,
        )
    }

    fn means_or_p(&self, ineq: Ineq, n: u64) -> Result<Vec<f64>, Error> {
        match (&self.means, self.p) {
            (Some(m), _) => Ok(m.clone()),
            (None, Some(p)) => Ok(vec![p; n as usize]),
            (None, None) => Err(Error::Usage(format!(
                "--means or --p is required for --ineq {}",
                ineq.name()
            ))),
        }
    }
}

/// A bound at fixed parameters with the threshold it accompanies, if any.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub bound: BoundValue,
    pub threshold: Option<ThresholdSpec>,
}

/// Evaluates the selected inequality.
pub fn evaluate(ineq: Ineq, n: u64, p: &Params) -> Result<Evaluation, Error> {
    if n == 0 {
        return Err(Error::Usage("--n must be a positive integer".into()));
    }
    let eval = match ineq {
        Ineq::Theorem1 => {
            let q = TheoremQuery::new(n, need(p.a, "a", ineq)?, need(p.b, "b", ineq)?)?;
            Evaluation {
                bound: theorem1_rhs(&q)?,
                threshold: Some(theorem1_threshold(&q)),
            }
        }
        Ineq::Cor1 => {
            let q = p.corollary(ineq, n)?;
            Evaluation {
                bound: cor1_bound(&q)?,
                threshold: Some(cor1_threshold(&q)?),
            }
        }
        Ineq::Cor2 => {
            let q = p.corollary(ineq, n)?;
            // the bound does not depend on the realized bias
            let e = cor2_eval(&q, 0.0)?;
            Evaluation {
                bound: e.bound,
                threshold: cor2_threshold(&q).ok(),
            }
        }
        Ineq::Cor3 => {
            let q = p.mean_known(ineq, n)?;
            Evaluation {
                bound: cor3_rhs(&q),
                threshold: Some(cor3_threshold(&q)),
            }
        }
        Ineq::Rs13 => {
            let eps = need(p.epsilon, "epsilon", ineq)?;
            let s = p.sign(ineq)?;
            Evaluation {
                bound: rs13_rhs(&p.means_or_p(ineq, n)?, eps, s)?,
                threshold: Some(ThresholdSpec::new(eps, 0.0, n, s)),
            }
        }
        Ineq::ChernoffMult => {
            let prob = need(p.p, "p", ineq)?;
            let s = p.sign(ineq)?;
            let bound = match (p.delta, p.epsilon) {
                (Some(d), _) => chernoff_mult_rhs(n as f64 * prob, d, s)?,
                (None, Some(e)) => chernoff_mult_equiv_rhs(n, prob, e, s)?,
                (None, None) => {
                    return Err(Error::Usage(
                        "--delta or --epsilon is required for --ineq chernoff_mult".into(),
                    ))
                }
            };
            Evaluation { bound, threshold: None }
        }
        Ineq::Azuma | Ineq::Hoeffding | Ineq::Bernstein | Ineq::Bennett => {
            let kind = ineq.baseline().expect("baseline");
            let eps = need(p.epsilon, "epsilon", ineq)?;
            Evaluation {
                bound: baseline_rhs(kind, n, eps, p.variance)?,
                threshold: Some(ThresholdSpec::new(eps, 0.0, n, p.s.unwrap_or(Sign::Plus))),
            }
        }
    };
    Ok(eval)
}

/// The family `ε ↦ rhs(ε)` for inversion.
pub fn family(ineq: Ineq, n: u64, p: &Params) -> Result<EpsilonFamily, Error> {
    if n == 0 {
        return Err(Error::Usage("--n must be a positive integer".into()));
    }
    let fam = match ineq {
        Ineq::Cor1 => EpsilonFamily::Cor1 {
            n,
            delta: need(p.delta, "delta", ineq)?,
            sign: p.sign(ineq)?,
        },
        Ineq::Cor3 => EpsilonFamily::Cor3 {
            n,
            p: need(p.p, "p", ineq)?,
            sign: p.sign(ineq)?,
        },
        Ineq::Rs13 => EpsilonFamily::Rs13 {
            means: p.means_or_p(ineq, n)?,
            sign: p.sign(ineq)?,
        },
        Ineq::ChernoffMult => EpsilonFamily::ChernoffMult {
            n,
            p: need(p.p, "p", ineq)?,
            sign: p.sign(ineq)?,
        },
        Ineq::Azuma | Ineq::Hoeffding | Ineq::Bernstein | Ineq::Bennett => EpsilonFamily::Baseline {
            kind: ineq.baseline().expect("baseline"),
            n,
            variance: p.variance,
        },
        Ineq::Theorem1 | Ineq::Cor2 => {
            return Err(Error::Unsupported(format!(
                "--ineq {} is not parameterized by epsilon alone; use cor1 or a baseline",
                ineq.name()
            )))
        }
    };
    Ok(fam)
}
