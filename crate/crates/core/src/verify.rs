//! Exact and randomized certificate checking, and Boolean images.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, IntEvaluator};
use crate::exec::{self, Strategy};
use crate::field::{FieldCircuit, PrimeField, DEFAULT_PRIME};
use crate::poly::{SparsePoly, MAX_TERMS};
use crate::rational::{format_compact, Rational};
use crate::refute::{AxiomForm, NullstellensatzCertificate};
use crate::var::{Namespace, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PitConfig {
    pub prime: u64,
    pub trials: u32,
    pub seed: u64,
}

impl Default for PitConfig {
    fn default() -> Self {
        PitConfig { prime: DEFAULT_PRIME, trials: 20, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    VerifiedExact,
    VerifiedProbabilistic,
    /// `witness` values are rationals, or residues when `modulus` is set.
    Refuted {
        witness: BTreeMap<VarId, String>,
        modulus: Option<u64>,
    },
    Error {
        detail: String,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Work {
    pub expansions: u64,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Pit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub mode: Mode,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub work: Work,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config: Option<PitConfig>,
}

impl VerifyReport {
    pub fn is_verified(&self) -> bool {
        matches!(self.verdict, Verdict::VerifiedExact | Verdict::VerifiedProbabilistic)
    }

    /// 0 verified, 1 refuted, 2 error.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::VerifiedExact | Verdict::VerifiedProbabilistic => 0,
            Verdict::Refuted { .. } => 1,
            Verdict::Error { .. } => 2,
        }
    }
}

/// Structural checks shared by both modes.
fn precheck(cert: &NullstellensatzCertificate) -> Result<(), String> {
    if cert.axioms.len() != cert.cofactors.len() {
        return Err(format!("{} axioms but {} cofactors", cert.axioms.len(), cert.cofactors.len()));
    }
    if cert.claimed_metrics.len() != cert.cofactors.len() {
        return Err("claimed metrics do not match the cofactor list".into());
    }
    for ((ax, cof), claimed) in cert.axioms.iter().zip(&cert.cofactors).zip(&cert.claimed_metrics) {
        let measured = cof.measure();
        if measured != *claimed {
            return Err(format!(
                "cofactor of `{}` measures size {} depth {}, claimed size {} depth {}",
                ax.label, measured.size, measured.depth, claimed.size, claimed.depth
            ));
        }
        let placeholder = |vars: BTreeSet<VarId>| vars.into_iter().find(|v| v.namespace() == Namespace::Fresh);
        let axiom_vars = match &ax.form {
            AxiomForm::Poly(p) => p.variables(),
            AxiomForm::Circuit(c) => c.variables(),
        };
        if let Some(v) = placeholder(cof.variables()).or_else(|| placeholder(axiom_vars)) {
            return Err(format!("placeholder variable {v} occurs in `{}`", ax.label));
        }
    }
    Ok(())
}

fn error(mode: Mode, detail: impl Into<String>, work: Work, config: Option<PitConfig>) -> VerifyReport {
    VerifyReport { mode, verdict: Verdict::Error { detail: detail.into() }, work, config }
}

/// Checks `Σ_k cofactor_k · axiom_k = 1` by expansion, through the
/// placeholder polynomial `C(x, t) = Σ_k cofactor_k · t_k`: `C` must be
/// linear in every `t_k`, vanish at `t = 0` and map the axioms to 1.
pub fn verify_exact(cert: &NullstellensatzCertificate) -> VerifyReport {
    let mut work = Work::default();
    if let Err(detail) = precheck(cert) {
        return error(Mode::Exact, detail, work, None);
    }
    let run = |work: &mut Work| -> Result<SparsePoly, String> {
        let mut ips = SparsePoly::zero();
        let mut axioms = BTreeMap::new();
        for (k, (ax, cof)) in cert.axioms.iter().zip(&cert.cofactors).enumerate() {
            let t = VarId::fresh(k as u32);
            let c = cof.expand().map_err(|e| e.to_string())?;
            work.expansions += 1;
            let term = c.checked_mul(&SparsePoly::var(t), MAX_TERMS).map_err(|e| e.to_string())?;
            ips = ips.checked_add(&term, MAX_TERMS).map_err(|e| e.to_string())?;
            axioms.insert(t, ax.form.expand().map_err(|e| e.to_string())?);
            work.expansions += 1;
        }
        for t in axioms.keys() {
            if ips.degree_in(*t) > 1 {
                return Err(format!("placeholder {t} occurs with degree above 1"));
            }
        }
        let at_zero: BTreeMap<VarId, Rational> = axioms.keys().map(|t| (*t, Rational::zero())).collect();
        if !ips.partial_evaluate(&at_zero).is_zero() {
            return Err("the placeholder polynomial does not vanish at t = 0".into());
        }
        let total = ips.substitute(&axioms);
        Ok(&total - &SparsePoly::one())
    };
    let diff = match run(&mut work) {
        Ok(d) => d,
        Err(detail) => return error(Mode::Exact, detail, work, None),
    };
    if diff.is_zero() {
        return VerifyReport { mode: Mode::Exact, verdict: Verdict::VerifiedExact, work, config: None };
    }
    match nonzero_point(&diff, &mut work) {
        Some(witness) => VerifyReport {
            mode: Mode::Exact,
            verdict: Verdict::Refuted {
                witness: witness.iter().map(|(v, x)| (*v, format_compact(x))).collect(),
                modulus: None,
            },
            work,
            config: None,
        },
        None => error(Mode::Exact, "nonzero difference but no witness point found", work, None),
    }
}

/// Seeded search for a point where a nonzero polynomial does not vanish.
fn nonzero_point(p: &SparsePoly, work: &mut Work) -> Option<BTreeMap<VarId, Rational>> {
    let vars = p.variables();
    let mut rng = ChaCha20Rng::seed_from_u64(0);
    for _ in 0..1000 {
        let point: BTreeMap<VarId, Rational> =
            vars.iter().map(|v| (*v, Rational::from_integer(rng.gen_range(-(1i64 << 20)..=1 << 20).into()))).collect();
        work.evaluations += 1;
        if !p.evaluate(&point).ok()?.is_zero() {
            return Some(point);
        }
    }
    None
}

enum CompiledAxiom {
    Poly(SparsePoly),
    Circuit(FieldCircuit),
}

/// Randomized check of the certificate identity modulo a prime.
pub fn verify_pit(cert: &NullstellensatzCertificate, cfg: &PitConfig) -> VerifyReport {
    verify_pit_with(cert, cfg, Strategy::default())
}

pub fn verify_pit_with(cert: &NullstellensatzCertificate, cfg: &PitConfig, strategy: Strategy) -> VerifyReport {
    let config = Some(*cfg);
    let work = Work::default();
    let field = match PrimeField::new(cfg.prime) {
        Ok(f) => f,
        Err(e) => return error(Mode::Pit, e.to_string(), work, config),
    };
    if cfg.trials == 0 {
        return error(Mode::Pit, "at least one trial is required", work, config);
    }
    if let Err(detail) = precheck(cert) {
        return error(Mode::Pit, detail, work, config);
    }
    let degree = cert
        .axioms
        .iter()
        .zip(&cert.cofactors)
        .map(|(ax, cof)| {
            let ax_deg = match &ax.form {
                AxiomForm::Poly(p) => p.total_degree() as u64,
                AxiomForm::Circuit(c) => c.degree_bound(),
            };
            cof.degree_bound().saturating_add(ax_deg)
        })
        .max()
        .unwrap_or(0);
    if degree >= cfg.prime {
        return error(Mode::Pit, format!("degree bound {degree} is not below the prime {}", cfg.prime), work, config);
    }
    let compiled = (|| {
        let cofactors = cert.cofactors.iter().map(|c| FieldCircuit::new(field, c)).collect::<Result<Vec<_>, _>>()?;
        let axioms = cert
            .axioms
            .iter()
            .map(|ax| match &ax.form {
                AxiomForm::Poly(p) => {
                    for (_, c) in p.terms() {
                        field.from_rational(c)?;
                    }
                    Ok(CompiledAxiom::Poly(p.clone()))
                }
                AxiomForm::Circuit(c) => FieldCircuit::new(field, c).map(CompiledAxiom::Circuit),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok::<_, crate::field::FieldError>((cofactors, axioms))
    })();
    let (cofactors, axioms) = match compiled {
        Ok(c) => c,
        Err(e) => return error(Mode::Pit, e.to_string(), work, config),
    };
    let mut vars = BTreeSet::new();
    for (ax, cof) in cert.axioms.iter().zip(&cert.cofactors) {
        vars.extend(cof.variables());
        match &ax.form {
            AxiomForm::Poly(p) => vars.extend(p.variables()),
            AxiomForm::Circuit(c) => vars.extend(c.variables()),
        }
    }
    let vars: Vec<VarId> = vars.into_iter().collect();

    let outcomes = exec::map_range(strategy, cfg.trials as usize, |trial| {
        let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial as u64);
        let point: HashMap<VarId, u64> = vars.iter().map(|v| (*v, rng.gen_range(0..field.modulus()))).collect();
        let mut scratch = Vec::new();
        let mut total = 0;
        for (cof, ax) in cofactors.iter().zip(&axioms) {
            let a = match ax {
                CompiledAxiom::Poly(p) => field.eval_poly(p, &point).expect("constants checked above"),
                CompiledAxiom::Circuit(c) => c.eval(&point, &mut scratch),
            };
            total = field.add(total, field.mul(cof.eval(&point, &mut scratch), a));
        }
        (total == 1).then_some(()).ok_or(point)
    });
    let work = Work { expansions: 0, evaluations: cfg.trials as u64 * (cofactors.len() + axioms.len()) as u64 };
    match outcomes.into_iter().find_map(Result::err) {
        None => VerifyReport { mode: Mode::Pit, verdict: Verdict::VerifiedProbabilistic, work, config },
        Some(point) => VerifyReport {
            mode: Mode::Pit,
            verdict: Verdict::Refuted {
                witness: point.into_iter().map(|(v, x)| (v, x.to_string())).collect(),
                modulus: Some(cfg.prime),
            },
            work,
            config,
        },
    }
}

/// Values observed on 0/1 points, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageReport {
    pub counts: BTreeMap<Rational, u64>,
    pub exhaustive: bool,
    pub points: u64,
    pub variables: usize,
}

impl ImageReport {
    pub fn values(&self) -> BTreeSet<Rational> {
        self.counts.keys().cloned().collect()
    }

    pub fn within(&self, target: &BTreeSet<Rational>) -> bool {
        self.counts.keys().all(|v| target.contains(v))
    }
}

const IMAGE_CHUNK: u64 = 4096;

#[derive(Default)]
struct Tally {
    small: HashMap<i128, u64>,
    big: BTreeMap<Rational, u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (k, c) in other.small {
            *self.small.entry(k).or_default() += c;
        }
        for (k, c) in other.big {
            *self.big.entry(k).or_default() += c;
        }
        self
    }

    fn record(&mut self, ev: &IntEvaluator, point: &[i128], scratch: &mut Vec<i128>) {
        match ev.eval_i128(point, scratch) {
            Some(v) => *self.small.entry(v).or_default() += 1,
            None => *self.big.entry(ev.eval(point, scratch)).or_default() += 1,
        }
    }
}

/// Image of `c` on the Boolean cube: exhaustive when the circuit has at
/// most `exhaustive_limit` variables, otherwise `samples` seeded uniform
/// points.
pub fn boolean_image(c: &Circuit, exhaustive_limit: u32, samples: u64, seed: u64) -> ImageReport {
    boolean_image_with(c, exhaustive_limit, samples, seed, Strategy::default())
}

pub fn boolean_image_with(
    c: &Circuit,
    exhaustive_limit: u32,
    samples: u64,
    seed: u64,
    strategy: Strategy,
) -> ImageReport {
    let ev = IntEvaluator::new(c);
    let n = ev.variables().len();
    let exhaustive = n as u32 <= exhaustive_limit.min(40);
    let points = if exhaustive { 1u64 << n } else { samples };
    let tally = exec::fold_chunks(
        strategy,
        points,
        IMAGE_CHUNK,
        |lo, hi| {
            let mut tally = Tally::default();
            let mut point = vec![0i128; n];
            let mut scratch = Vec::new();
            if exhaustive {
                for k in lo..hi {
                    for (b, slot) in point.iter_mut().enumerate() {
                        *slot = ((k >> b) & 1) as i128;
                    }
                    tally.record(&ev, &point, &mut scratch);
                }
            } else {
                let mut rng = ChaCha20Rng::seed_from_u64(seed);
                rng.set_stream(lo / IMAGE_CHUNK);
                for _ in lo..hi {
                    for slot in point.iter_mut() {
                        *slot = rng.gen_range(0..=1);
                    }
                    tally.record(&ev, &point, &mut scratch);
                }
            }
            tally
        },
        Tally::merge,
    )
    .unwrap_or_default();
    let mut counts = tally.big;
    for (k, c) in tally.small {
        *counts.entry(Rational::from_integer(k.into())).or_default() += c;
    }
    ImageReport { counts, exhaustive, points, variables: n }
}

/// `{0, 1}` as a target set.
pub fn zero_one() -> BTreeSet<Rational> {
    [Rational::zero(), Rational::one()].into_iter().collect()
}

/// `{-1, 0, 1}` as a target set.
pub fn signed_unit() -> BTreeSet<Rational> {
    [-Rational::one(), Rational::zero(), Rational::one()].into_iter().collect()
}

/// Image of a polynomial on the full cube by direct evaluation; the oracle
/// for [`boolean_image`].
pub fn poly_image(p: &SparsePoly, vars: &[VarId]) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for k in 0u64..1 << vars.len() {
        let point: BTreeMap<VarId, Rational> =
            vars.iter().enumerate().map(|(b, v)| (*v, Rational::from_integer(((k >> b) & 1).into()))).collect();
        out.insert(p.evaluate(&point).expect("all variables assigned"));
    }
    out
}
