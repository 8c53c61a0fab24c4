//! The `verify` suites: every structural claim, bound and oracle comparison
//! evaluated at one modulus, collected into a [`VerifyReport`].

use std::time::Instant;

use cycloinv_core::expansion::{
    expansion_ratio, expected_max_factor, randomized_expansion_check, reference_witness_g,
    reference_witness_k,
};
use cycloinv_core::matrix::kronecker_with_identity;
use cycloinv_core::scaled::{
    binomial_element, consistent_with_generic, generic_with_denominator_lcm,
    lower_bound_alternative, lower_bound_exponents, prime_power_numerator,
    prime_power_numerator_sum, two_prime_case,
};
use cycloinv_core::structure::{
    band_form, diff_quotient_coeffs, diff_quotient_facts, inflated_pattern_check, low_tail_form,
    phi_pq_at_one, phi_pq_symmetric, random_subset_max_norm, residue_class_pattern,
    rev_symmetry_check, RowClass,
};
use cycloinv_core::{
    kron_check, make_modulus, max_expansion_factor, monomial_expansion_factor, monomial_reduce,
    reduce, reduction_matrix, ring_mul, scaled_inverse, CycloModulus, IntPoly, InverseCase,
    ScaledInverse, Shape,
};
use num_bigint::BigInt;
use num_traits::One;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::output::MatrixJson;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Lemmas,
    Theorems,
    Matrix,
    Expansion,
}

impl Suite {
    fn expand(self) -> &'static [Suite] {
        match self {
            Suite::All => &[
                Suite::Matrix,
                Suite::Lemmas,
                Suite::Theorems,
                Suite::Expansion,
            ],
            Suite::Lemmas => &[Suite::Lemmas],
            Suite::Theorems => &[Suite::Theorems],
            Suite::Matrix => &[Suite::Matrix],
            Suite::Expansion => &[Suite::Expansion],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Lemmas => "lemmas",
            Suite::Theorems => "theorems",
            Suite::Matrix => "matrix",
            Suite::Expansion => "expansion",
        }
    }
}

/// Deliberate off-by-one mutations of single closed forms, used to confirm
/// that the suites catch a wrong formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// `x^(phi+k) mod Phi_pq` for the band range evaluated at `k + 1`.
    BandForm,
    /// The low-tail closed form evaluated at `k + 1`.
    LowTailForm,
    /// Prime-power tightness expects `p` instead of `p - 1`.
    PrimePowerBound,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            trials: 1000,
            seed: DEFAULT_SEED,
            fault: None,
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x5EED_C1C1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    /// Failing input, when the check failed.
    pub witness: Option<String>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteTiming {
    pub name: &'static str,
    pub checks: usize,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Totals {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    #[serde(rename = "M")]
    pub m: usize,
    pub phi: usize,
    pub shape: String,
    pub seed: u64,
    pub trials: usize,
    pub suites: Vec<SuiteTiming>,
    pub checks: Vec<CheckResult>,
    pub totals: Totals,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.totals.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn pretty(&self) -> String {
        let mut out = format!(
            "verify M = {} ({}), phi = {}, seed = {}, trials = {}\n",
            self.m, self.shape, self.phi, self.seed, self.trials
        );
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{tag} {:<28} {}", c.name, c.detail));
            if let Some(w) = &c.witness {
                out.push_str(&format!(" [witness: {w}]"));
            }
            out.push('\n');
        }
        for s in &self.suites {
            out.push_str(&format!(
                "suite {:<10} {:>3} checks {:>10.1} ms\n",
                s.name, s.checks, s.wall_ms
            ));
        }
        out.push_str(&format!(
            "{} passed, {} failed\n",
            self.totals.passed, self.totals.failed
        ));
        out
    }
}

/// `Ok(detail)` on success, `Err(witness)` on failure.
type Outcome = Result<String, String>;

fn ensure(cond: bool, detail: impl Into<String>, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(detail.into())
    } else {
        Err(witness())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    format!("error: {e}")
}

struct Recorder {
    suite: &'static str,
    results: Vec<CheckResult>,
}

impl Recorder {
    fn check(&mut self, name: &'static str, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (status, detail, witness) = match f() {
            Ok(d) => (Status::Pass, d, None),
            Err(w) => (Status::Fail, String::new(), Some(w)),
        };
        self.results.push(CheckResult {
            suite: self.suite,
            name,
            status,
            detail,
            witness,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
}

/// Independent RNG stream per randomized check.
fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn run_verify(modulus: &CycloModulus, opts: &VerifyOptions) -> VerifyReport {
    let mut checks = Vec::new();
    let mut suites = Vec::new();
    for &suite in opts.suite.expand() {
        let start = Instant::now();
        let mut rec = Recorder {
            suite: suite.name(),
            results: Vec::new(),
        };
        match suite {
            Suite::Matrix => matrix_suite(&mut rec, modulus),
            Suite::Lemmas => lemma_suite(&mut rec, modulus, opts),
            Suite::Theorems => theorem_suite(&mut rec, modulus, opts),
            Suite::Expansion => expansion_suite(&mut rec, modulus, opts),
            Suite::All => unreachable!("expanded above"),
        }
        suites.push(SuiteTiming {
            name: suite.name(),
            checks: rec.results.len(),
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        });
        checks.extend(rec.results);
    }
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    VerifyReport {
        m: modulus.m(),
        phi: modulus.phi(),
        shape: modulus.shape().to_string(),
        seed: opts.seed,
        trials: opts.trials,
        suites,
        totals: Totals {
            total: checks.len(),
            passed: checks.len() - failed,
            failed,
        },
        checks,
    }
}

fn is_ternary(v: &[i8]) -> bool {
    v.iter().all(|e| (-1..=1).contains(e))
}

fn matrix_suite(rec: &mut Recorder, m: &CycloModulus) {
    let r = reduction_matrix(m);
    let (rows, cols) = (r.rows(), r.cols());

    rec.check("matrix.columns", || {
        for k in 0..cols {
            let direct = reduce(&IntPoly::monomial(BigInt::one(), k), m);
            let col: Vec<BigInt> = r.column(k).into_iter().map(BigInt::from).collect();
            if direct.coeffs() != col.as_slice() {
                return Err(format!("column {k}"));
            }
        }
        Ok(format!("{cols} columns equal x^k mod Phi_M"))
    });
    rec.check("matrix.identity_block", || {
        for i in 0..rows {
            for j in 0..rows {
                if r.get(i, j) != i8::from(i == j) {
                    return Err(format!("entry ({i}, {j})"));
                }
            }
        }
        Ok(format!("first {rows} columns are I"))
    });
    rec.check("matrix.ternary", || {
        ensure(is_ternary(r.entries()), "entries in {-1, 0, 1}", || {
            "entry outside {-1, 0, 1}".into()
        })
    });
    rec.check("matrix.json_round_trip", || {
        let text = serde_json::to_string(&MatrixJson::from(&r)).map_err(err)?;
        let back: MatrixJson = serde_json::from_str(&text).map_err(err)?;
        ensure(back.matches(&r), "re-parsed JSON equals R_M", || {
            "parsed matrix differs".into()
        })
    });

    match m.shape() {
        Shape::PrimePower { p, .. } => {
            rec.check("matrix.prime_power_form", || {
                let p = p as usize;
                let mut base = vec![0i8; (p - 1) * p];
                for i in 0..p - 1 {
                    base[i * p + i] = 1;
                    base[i * p + p - 1] = -1;
                }
                let n = m.shape().inflation() as usize;
                ensure(
                    kronecker_with_identity(&base, p - 1, p, n) == r.entries(),
                    "R_M = (I | -1) (x) I",
                    || "R_M differs from (I | -1) (x) I".into(),
                )
            });
        }
        Shape::TwoPrime { p, q, .. } => {
            if let Some(b) = r.blocks() {
                let (p, q) = (p as usize, q as usize);
                rec.check("matrix.b1_first_row", || {
                    ensure(
                        b.b1.clone().all(|c| r.get(0, c) == -1),
                        "row 0 of B1 is -1",
                        || "row 0 of B1".into(),
                    )
                });
                rec.check("matrix.b1_last_row", || {
                    ensure(
                        b.b1.clone().all(|c| r.get(rows - 1, c) == 1),
                        "last row of B1 is +1",
                        || "last row of B1".into(),
                    )
                });
                rec.check("matrix.b2_toeplitz", || {
                    for i in 1..rows {
                        for c in b.b2.start + 1..b.b2.end {
                            if r.get(i, c) != r.get(i - 1, c - 1) {
                                return Err(format!("entry ({i}, {c})"));
                            }
                        }
                    }
                    Ok(format!("B2 ({} columns) is Toeplitz", q - p + 1))
                });
                rec.check("matrix.b3_rotation", || {
                    for i in 0..rows {
                        for c in 0..p - 1 {
                            let rot = r.get(rows - 1 - i, b.b1.start + p - 2 - c);
                            if r.get(i, b.b3.start + c) != rot {
                                return Err(format!("B3 entry ({i}, {c})"));
                            }
                        }
                    }
                    Ok("B3 is B1 rotated by 180 degrees".into())
                });
            }
        }
    }
    if !m.shape().is_squarefree() {
        rec.check("matrix.kronecker", || {
            ensure(kron_check(m).map_err(err)?, "R_M = R_rad (x) I", || {
                "Kronecker identity fails".into()
            })
        });
    }
}

fn lemma_suite(rec: &mut Recorder, m: &CycloModulus, opts: &VerifyOptions) {
    let (p, q) = match m.shape() {
        Shape::PrimePower { p, .. } => {
            rec.check("phi.at_one", || {
                let v = m.poly().eval(&BigInt::one());
                ensure(v == BigInt::from(p), format!("Phi_M(1) = {p}"), || {
                    format!("Phi_M(1) = {v}")
                })
            });
            rec.check("phi.symmetric", || {
                ensure(
                    &m.poly().rev().map_err(err)? == m.poly(),
                    "rev(Phi_M) = Phi_M",
                    || "not symmetric".into(),
                )
            });
            return;
        }
        Shape::TwoPrime { p, q, .. } => (p, q),
    };
    let pq = match make_modulus(p * q) {
        Ok(pq) => pq,
        Err(e) => {
            rec.check("structure.setup", || Err(err(e)));
            return;
        }
    };
    let phi = pq.phi() as u64;

    rec.check("phi_pq.at_one", || {
        let v = phi_pq_at_one(p, q).map_err(err)?;
        ensure(v.is_one(), "Phi_pq(1) = 1", || format!("Phi_pq(1) = {v}"))
    });
    rec.check("phi_pq.symmetric", || {
        ensure(
            phi_pq_symmetric(p, q).map_err(err)?,
            "rev(Phi_pq) = Phi_pq",
            || "not symmetric".into(),
        )
    });
    rec.check("quotient.diophantine", || {
        let (b, _) = diff_quotient_coeffs(p, q).map_err(err)?;
        Ok(format!(
            "{} coefficients b_i match the Diophantine table",
            b.len()
        ))
    });
    match diff_quotient_facts(p, q) {
        Ok(parts) => {
            for (name, ok) in [
                "quotient.multiples_of_p",
                "quotient.below_q",
                "quotient.solvable_above_phi",
                "quotient.complementary",
            ]
            .into_iter()
            .zip(parts)
            {
                rec.check(name, || ensure(ok, "holds", || "part fails".into()));
            }
        }
        Err(e) => rec.check("quotient.facts", || Err(err(e))),
    }

    let low_shift = u64::from(opts.fault == Some(Fault::LowTailForm));
    rec.check("reduce.low_tail", || {
        for k in 0..p {
            let direct = monomial_reduce((phi + k) as i64, &pq);
            let form = low_tail_form(k + low_shift, p, q).map_err(err)?;
            if direct.to_poly() != form || direct.max_norm() != BigInt::one() {
                return Err(format!("k = {k}"));
            }
        }
        Ok(format!("closed form holds for 0 <= k <= {}", p - 1))
    });
    rec.check("reduce.low_tail_constant", || {
        for k in 0..p - 1 {
            if monomial_reduce((phi + k) as i64, &pq).coeffs()[0] != BigInt::from(-1) {
                return Err(format!("k = {k}"));
            }
        }
        Ok("0th coefficient is -1".into())
    });
    rec.check("reduce.low_tail_top", || {
        for k in 0..p - 1 {
            if !monomial_reduce((phi + k) as i64, &pq).coeffs()[phi as usize - 1].is_one() {
                return Err(format!("k = {k}"));
            }
        }
        Ok("top coefficient is +1".into())
    });
    let band_shift = u64::from(opts.fault == Some(Fault::BandForm));
    rec.check("reduce.band", || {
        for k in p - 1..q {
            let direct = monomial_reduce((phi + k) as i64, &pq);
            if direct.to_poly() != band_form(k + band_shift, p, q).map_err(err)? {
                return Err(format!("k = {k}"));
            }
        }
        Ok(format!("closed form holds for {} <= k <= {}", p - 1, q - 1))
    });
    rec.check("reduce.reversal", || {
        ensure(
            rev_symmetry_check(p, q).map_err(err)?,
            "rev relation holds",
            || "reversal mismatch".into(),
        )
    });
    rec.check("reduce.ternary", || {
        for k in 0..p * q {
            if monomial_reduce(k as i64, &pq).max_norm() != BigInt::one() {
                return Err(format!("k = {k}"));
            }
        }
        Ok("||x^k mod Phi_pq|| = 1 for all k".into())
    });
    rec.check("residue.class_sum_zero", || {
        for j in 0..p {
            let mut acc = cycloinv_core::RingElement::zero(&pq);
            for i in 0..q {
                acc = acc
                    .add(&monomial_reduce((j + i * p) as i64, &pq))
                    .map_err(err)?;
            }
            if !acc.is_zero() {
                return Err(format!("j = {j}"));
            }
        }
        Ok("residue class sums vanish".into())
    });
    rec.check("residue.row_pattern", || {
        for j in 0..p {
            let rows = residue_class_pattern(j, &pq).map_err(err)?;
            if let Some((k, RowClass::Other(row))) = rows
                .iter()
                .enumerate()
                .find(|(_, c)| matches!(c, RowClass::Other(_)))
            {
                return Err(format!("j = {j}, row {k}: {row:?}"));
            }
        }
        Ok("every row is all-zero or one +1 and one -1".into())
    });
    rec.check("residue.random_subsets", || {
        for j in 0..p {
            let mut r = rng(opts.seed, 100 + j);
            let worst = random_subset_max_norm(j, &pq, opts.trials, &mut r).map_err(err)?;
            if worst > BigInt::one() {
                return Err(format!("j = {j}, norm {worst}"));
            }
        }
        Ok(format!(
            "{} subsets per residue class, norm <= 1",
            opts.trials
        ))
    });
    rec.check("residue.inflated_subsets", || {
        let mut r = rng(opts.seed, 200);
        ensure(
            inflated_pattern_check(m, opts.trials, &mut r).map_err(err)?,
            format!("{} random families per j, norm <= 1", opts.trials),
            || "inflated subset sum exceeds 1".into(),
        )
    });
}

fn all_pairs(m: &CycloModulus) -> Vec<(i64, i64)> {
    let n = m.m() as i64;
    (1..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect()
}

/// First failing pair, in pair order.
fn first_failure(
    pairs: &[(i64, i64)],
    f: impl Fn(usize, i64, i64) -> Result<(), String> + Sync,
) -> Result<(), String> {
    let mut failures: Vec<(usize, String)> = pairs
        .par_iter()
        .enumerate()
        .filter_map(|(n, &(i, j))| {
            f(n, i, j)
                .err()
                .map(|e| (n, format!("(i, j) = ({i}, {j}): {e}")))
        })
        .collect();
    failures.sort();
    failures.into_iter().next().map_or(Ok(()), |(_, w)| Err(w))
}

fn theorem_suite(rec: &mut Recorder, m: &CycloModulus, opts: &VerifyOptions) {
    let pairs = all_pairs(m);
    let p = m.p();
    match m.shape() {
        Shape::PrimePower { .. } => {
            rec.check("inverse.prime_power_exhaustive", || {
                first_failure(&pairs, |_, i, j| {
                    let inv = scaled_inverse(i, j, m).map_err(err)?;
                    let prod = ring_mul(&binomial_element(i, j, m), &inv.u).map_err(err)?;
                    if inv.case != InverseCase::PrimePower
                        || inv.scale != BigInt::from(p)
                        || !prod.is_constant(&BigInt::from(p))
                        || inv.norm() > BigInt::from(p - 1)
                    {
                        return Err(format!("scale {}, norm {}", inv.scale, inv.norm()));
                    }
                    Ok(())
                })?;
                Ok(format!(
                    "{} pairs: product = {p}, norm <= {}",
                    pairs.len(),
                    p - 1
                ))
            });
            let expected = if opts.fault == Some(Fault::PrimePowerBound) {
                p
            } else {
                p - 1
            };
            rec.check("inverse.prime_power_tight", || {
                let norm = scaled_inverse(1, 0, m).map_err(err)?.norm();
                ensure(
                    norm == BigInt::from(expected),
                    format!("||u|| = {expected} at (1, 0)"),
                    || format!("||u|| = {norm} at (1, 0), expected {expected}"),
                )
            });
            rec.check("inverse.prime_power_sum_form", || {
                first_failure(&pairs, |_, i, j| {
                    let a = prime_power_numerator(i, j, m).map_err(err)?;
                    let b = prime_power_numerator_sum(i, j, m).map_err(err)?;
                    if a == b {
                        Ok(())
                    } else {
                        Err("summation form differs".into())
                    }
                })?;
                Ok("division and summation forms agree".into())
            });
        }
        Shape::TwoPrime { p, s, q, t } => {
            rec.check("inverse.two_prime_exhaustive", || {
                first_failure(&pairs, |_, i, j| {
                    let d = (i - j) as u64;
                    let (case, scale, bound) = if d.is_multiple_of(p.pow(s)) {
                        (InverseCase::PDividesShift, q, q - 1)
                    } else if d.is_multiple_of(q.pow(t)) {
                        (InverseCase::QDividesShift, p, p - 1)
                    } else {
                        (InverseCase::Coprime, 1, p - 1)
                    };
                    if two_prime_case(i, j, m).map_err(err)? != case {
                        return Err("wrong case".into());
                    }
                    let inv = scaled_inverse(i, j, m).map_err(err)?;
                    let prod = ring_mul(&binomial_element(i, j, m), &inv.u).map_err(err)?;
                    if inv.case != case
                        || inv.scale != BigInt::from(scale)
                        || inv.bound != Some(bound)
                        || !prod.is_constant(&BigInt::from(scale))
                        || inv.norm() > BigInt::from(bound)
                    {
                        return Err(format!(
                            "case {}, scale {}, norm {}",
                            inv.case,
                            inv.scale,
                            inv.norm()
                        ));
                    }
                    Ok(())
                })?;
                Ok(format!(
                    "{} pairs match the (scale, bound) table",
                    pairs.len()
                ))
            });
            rec.check("inverse.lower_bound_pair", || {
                let (i, j) = lower_bound_exponents(m).map_err(err)?;
                let norm = scaled_inverse(i, j, m).map_err(err)?.norm();
                ensure(
                    norm >= BigInt::from(p - 2),
                    format!("||u|| = {norm} >= {}", p - 2),
                    || format!("(i, j) = ({i}, {j}), ||u|| = {norm}"),
                )
            });
            rec.check("inverse.lower_bound_alternative", || {
                let (i, j) = lower_bound_exponents(m).map_err(err)?;
                let alt = lower_bound_alternative(m).map_err(err)?;
                let u = scaled_inverse(i, j, m).map_err(err)?.u;
                let c0 = alt.coeff(0).clone();
                ensure(
                    reduce(&alt, m) == u && c0 == -BigInt::from(p - 2),
                    format!("same residue as u, 0th coefficient {c0}"),
                    || {
                        format!(
                            "0th coefficient {c0}, same residue: {}",
                            reduce(&alt, m) == u
                        )
                    },
                )
            });
        }
    }
    // One resultant per pair serves both oracle checks.
    let generic: Vec<Result<(ScaledInverse, BigInt), String>> = pairs
        .par_iter()
        .map(|&(i, j)| generic_with_denominator_lcm(&binomial_element(i, j, m)).map_err(err))
        .collect();
    rec.check("oracle.equivalence", || {
        first_failure(&pairs, |n, i, j| {
            let c = scaled_inverse(i, j, m).map_err(err)?;
            let (g, _) = generic[n].as_ref().map_err(Clone::clone)?;
            if consistent_with_generic(&c, g) {
                Ok(())
            } else {
                Err(format!(
                    "constructive scale {}, generic scale {}",
                    c.scale, g.scale
                ))
            }
        })?;
        Ok(format!(
            "{} pairs agree with the resultant route",
            pairs.len()
        ))
    });
    rec.check("oracle.scale_minimality", || {
        first_failure(&pairs, |n, _, _| {
            let (g, lcm) = generic[n].as_ref().map_err(Clone::clone)?;
            if &g.scale == lcm {
                Ok(())
            } else {
                Err(format!("generic scale {}, denominator lcm {lcm}", g.scale))
            }
        })?;
        Ok("generic scale = lcm of denominators".into())
    });
}

fn expansion_suite(rec: &mut Recorder, m: &CycloModulus, opts: &VerifyOptions) {
    let shape = m.shape();
    let report = match max_expansion_factor(m) {
        Ok(r) => r,
        Err(e) => {
            rec.check("expansion.max_factor", || Err(err(e)));
            return;
        }
    };
    let expected = expected_max_factor(shape);
    rec.check("expansion.max_factor", || {
        ensure(
            report.max_factor == expected,
            format!("max factor {expected}"),
            || {
                format!(
                    "max factor {} at k = {}, expected {expected}",
                    report.max_factor, report.witness_k
                )
            },
        )
    });
    rec.check("expansion.witness", || {
        let (num, den) = expansion_ratio(report.witness_k, &report.witness_g.to_poly(), m);
        ensure(
            num == BigInt::from(report.max_factor) * &den,
            format!("g attains the maximum at k = {}", report.witness_k),
            || format!("ratio {num}/{den}"),
        )
    });
    // The reference pair attains 2p only when p is odd.
    if !matches!(shape, Shape::TwoPrime { p: 2, .. }) {
        rec.check("expansion.reference_witness", || {
            let k = reference_witness_k(shape);
            let g = reference_witness_g(shape);
            let (factor, _) = monomial_expansion_factor(k, m).map_err(err)?;
            let (num, den) = expansion_ratio(k, &g, m);
            ensure(
                factor == expected && num == BigInt::from(expected) * &den,
                format!("k = {k} attains {expected}"),
                || format!("k = {k}: factor {factor}, ratio {num}/{den}"),
            )
        });
    }
    rec.check("expansion.randomized", || {
        let mut r = rng(opts.seed, 300);
        let ks = [report.witness_k, reference_witness_k(shape), 1];
        for k in ks {
            if !randomized_expansion_check(k, m, opts.trials, 5, &mut r).map_err(err)? {
                return Err(format!("k = {k}"));
            }
        }
        Ok(format!(
            "{} random g per k never exceed the factor",
            opts.trials
        ))
    });
}
