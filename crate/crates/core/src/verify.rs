//! Seeded verification suite.
//!
//! Every property of the library is evaluated on a reproducible random
//! corpus and reduced to one [`Check`] per property: the worst case over the
//! corpus (`lhs`) compared against a reference (`rhs`) with an absolute
//! tolerance. Checks tagged with a `criterion` number form the acceptance
//! gate; the rest are module-level properties.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bures::{
    diag_bound, eigenbasis_bound, gelbrich_bound, klein_residual, minimizer_covariance, trace_power_gap,
    trace_sqrt_gap, w2_closed, VarianceVector,
};
use crate::csvio;
use crate::discrete_ot::{assignment_min, brute_force_min, empirical_w2, CostMatrix};
use crate::elliptical::{
    random_correlation, random_pd, sample, sample_covariance, EllipticalSpec, GaussianPairMixture,
    Generator, SampleSet,
};
use crate::error::Result;
use crate::experiment::{run_trials, Law, TrialOutcome};
use crate::symmat::{eigh, matrix_power_psd, matmul, trace_power, SymMatrix};

pub const DEFAULT_SEED: u64 = 42;

/// Envelopes for the mean empirical distance over the full trial count,
/// as `(δ_lo, δ_hi)` around the closed form; fixed from five pilot seeds
/// (see `examples/envelope_pilot.rs`). Gaussian pilot means: 1.013–1.033 of
/// the closed form; Student-t(6): 1.047–1.079.
pub const GAUSSIAN_MEAN_ENVELOPE: (f64, f64) = (0.05, 0.10);
pub const STUDENT_T_MEAN_ENVELOPE: (f64, f64) = (0.05, 0.18);
/// Per-trial envelopes, used in quick mode where only a couple of trials run.
/// Pilot trial ratios: Gaussian 0.91–1.17, Student-t(6) 0.91–1.26.
pub const GAUSSIAN_TRIAL_ENVELOPE: (f64, f64) = (0.15, 0.30);
pub const STUDENT_T_TRIAL_ENVELOPE: (f64, f64) = (0.20, 0.40);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

/// One verified property. `passed` is `lhs <relation> rhs` with the
/// tolerance applied in the permissive direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u32>,
    pub passed: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub relation: Relation,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: f64, relation: Relation, rhs: f64, tolerance: f64) -> Self {
        let passed = lhs.is_finite()
            && rhs.is_finite()
            && match relation {
                Relation::Le => lhs <= rhs + tolerance,
                Relation::Lt => lhs < rhs + tolerance,
                Relation::Ge => lhs >= rhs - tolerance,
                Relation::Gt => lhs > rhs - tolerance,
            };
        Self {
            name: name.into(),
            criterion: None,
            passed,
            lhs,
            rhs,
            tolerance,
            relation,
        }
    }

    pub fn le(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(name, lhs, Relation::Le, rhs, tolerance)
    }

    pub fn ge(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(name, lhs, Relation::Ge, rhs, tolerance)
    }

    pub fn gt(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::new(name, lhs, Relation::Gt, rhs, 0.0)
    }

    fn criterion(mut self, c: u32) -> Self {
        self.criterion = Some(c);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Shrinks every corpus tenfold.
    pub quick: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            quick: false,
        }
    }
}

impl VerifyConfig {
    fn count(&self, full: usize) -> usize {
        if self.quick {
            (full / 10).max(1)
        } else {
            full
        }
    }

    /// Independent seed for item `index` of suite `tag`.
    fn seed_for(&self, tag: u64, index: u64) -> u64 {
        splitmix64(splitmix64(self.seed ^ tag.wrapping_mul(0xD6E8_FEB8_6659_FD93)).wrapping_add(index))
    }

    fn rng(&self, tag: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed_for(tag, u64::MAX))
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub quick: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn criterion(&self, c: u32) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |k| k.criterion == Some(c))
    }
}

/// Runs every suite. Errors only on internal failures (a library call
/// rejecting input the corpus generator promised to be valid).
pub fn run(config: VerifyConfig) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    checks.extend(symmat_properties(&config)?);
    checks.extend(bures_properties(&config)?);
    checks.extend(elliptical_properties(&config)?);
    checks.extend(ot_properties(&config)?);
    checks.extend(trace_inequalities(&config)?);
    checks.extend(minimization(&config)?);
    checks.extend(bound_chain(&config)?);
    checks.extend(oracle_agreement(&config)?);
    checks.extend(empirical_elliptical(&config, 8, Generator::Gaussian)?);
    checks.extend(empirical_elliptical(&config, 9, Generator::student_t(6.0)?)?);
    checks.extend(empirical_mixture(&config)?);
    Ok(VerifyReport {
        seed: config.seed,
        quick: config.quick,
        checks,
    })
}

fn min_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::INFINITY, f64::min)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = rng.random_range(-1.0..1.0);
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    SymMatrix::symmetrize_dense(n, &entries)
}

fn symmat_properties(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut rng = cfg.rng(1);
    let (mut recon, mut orth, mut nondeterministic) = (0.0f64, 0.0f64, 0.0);
    for k in 0..cfg.count(500) {
        let n = 1 + k % 8;
        let a = random_symmetric(&mut rng, n);
        let d = eigh(&a)?;
        recon = recon.max(d.reconstruct().max_abs_diff(&a) / (1.0 + a.max_abs()));
        let u = d.eigenvectors();
        let ut = crate::symmat::transpose(u, n);
        let utu = SymMatrix::symmetrize_dense(n, &matmul(&ut, u, n));
        orth = orth.max(utu.max_abs_diff(&SymMatrix::identity(n)));
        if eigh(&a)? != d {
            nondeterministic += 1.0;
        }
    }

    let (mut composition, mut trace_rel) = (0.0f64, 0.0f64);
    for k in 0..cfg.count(100) {
        let n = 1 + k % 6;
        let a = random_pd(n, cfg.seed_for(2, k as u64), 1e4);
        let root = matrix_power_psd(&matrix_power_psd(&a, 0.5)?, 1.0)?;
        let sq = SymMatrix::symmetrize_dense(n, &matmul(root.as_slice(), root.as_slice(), n));
        composition = composition.max(sq.max_abs_diff(&a) / (1.0 + a.max_abs()));
        let t = trace_power(&a, 1.0)?;
        trace_rel = trace_rel.max((t - a.trace()).abs() / a.trace().abs());
    }

    Ok(vec![
        Check::le("symmat.reconstruction", recon, 0.0, 1e-9),
        Check::le("symmat.orthogonality", orth, 0.0, 1e-10),
        Check::le("symmat.deterministic", nondeterministic, 0.0, 0.0),
        Check::le("symmat.power_composition", composition, 0.0, 1e-8),
        Check::le("symmat.trace_consistency", trace_rel, 0.0, 1e-12),
    ])
}

fn bures_properties(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let (mut asym, mut identity, mut separation, mut scaling) = (0.0f64, 0.0f64, f64::INFINITY, 0.0f64);
    for k in 0..cfg.count(200) {
        let n = 1 + k % 6;
        let a = random_pd(n, cfg.seed_for(10, k as u64), 1e3);
        let b = random_pd(n, cfg.seed_for(11, k as u64), 1e3);
        let ab = w2_closed(&a, &b)?;
        let ba = w2_closed(&b, &a)?;
        asym = asym.max((ab - ba).abs() / ab.max(ba).max(f64::MIN_POSITIVE));
        identity = identity.max(w2_closed(&a, &a)? / (1.0 + a.max_abs()));
        if a.max_abs_diff(&b) > 1e-3 {
            separation = separation.min(ab);
        }
        for c in [0.01, 0.5, 3.0, 100.0] {
            let scaled = w2_closed(&a.scaled(c), &b.scaled(c))?;
            let expected = c.sqrt() * ab;
            scaling = scaling.max((scaled - expected).abs() / expected.max(f64::MIN_POSITIVE));
        }
    }

    // diagonal Σx with distinct entries: the eigenbasis is a permutation
    let mut consistency = 0.0f64;
    let mut rng = cfg.rng(12);
    for k in 0..cfg.count(100) {
        let n = 1 + k % 6;
        let mut dx: Vec<f64> = (0..n).map(|i| 0.5 + i as f64 + rng.random_range(0.0..0.5)).collect();
        for i in (1..n).rev() {
            dx.swap(i, rng.random_range(0..=i));
        }
        let x = SymMatrix::from_diagonal(&dx);
        let y = random_pd(n, cfg.seed_for(13, k as u64), 1e3);
        let eb = eigenbasis_bound(&x, &y)?.bound;
        let db = diag_bound(&VarianceVector::new(dx)?, &VarianceVector::new(y.diagonal())?)?;
        consistency = consistency.max((eb - db).abs());
    }

    Ok(vec![
        Check::le("bures.symmetry", asym, 0.0, 1e-9),
        Check::le("bures.identity", identity, 0.0, 1e-7),
        Check::gt("bures.separation", separation, 0.0),
        Check::le("bures.scaling", scaling, 0.0, 1e-9),
        Check::le("bures.diagonal_consistency", consistency, 0.0, 1e-10),
    ])
}

fn elliptical_properties(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    const N: usize = 100_000;
    let (mut gauss, mut student) = (0.0f64, 0.0f64);
    for k in 0..cfg.count(10) {
        let n = 1 + k % 4;
        let cov = random_pd(n, cfg.seed_for(20, k as u64), 10.0);
        let seed = cfg.seed_for(21, k as u64);
        let g = sample(&EllipticalSpec::gaussian(cov.clone())?, N, seed)?;
        gauss = gauss.max(sample_covariance(&g, false)?.max_abs_diff(&cov) / cov.max_abs());
        let df = [5.0, 6.0, 10.0][k % 3];
        let t = sample(&EllipticalSpec::new(Generator::student_t(df)?, cov.clone())?, N, seed)?;
        student = student.max(sample_covariance(&t, false)?.max_abs_diff(&cov) / cov.max_abs());
    }

    let spec = EllipticalSpec::new(Generator::student_t(7.0)?, random_pd(3, cfg.seed_for(22, 0), 10.0))?;
    let s1 = sample(&spec, 64, cfg.seed_for(23, 0))?;
    let s2 = sample(&spec, 64, cfg.seed_for(23, 0))?;
    let same = s1.as_slice().iter().zip(s2.as_slice()).all(|(a, b)| a.to_bits() == b.to_bits());

    let (mut cond_excess, mut unit_diag, mut not_pd) = (0.0f64, 0.0f64, 0.0);
    for k in 0..cfg.count(100) {
        let n = 1 + k % 6;
        let a = random_pd(n, cfg.seed_for(24, k as u64), 1e4);
        let d = eigh(&a)?;
        if d.min_eigenvalue() <= 0.0 {
            not_pd += 1.0;
        } else {
            cond_excess = cond_excess.max(d.max_eigenvalue() / d.min_eigenvalue() / 1e4);
        }
        let c = random_correlation(n, cfg.seed_for(25, k as u64));
        unit_diag = unit_diag.max(max_of(c.diagonal().iter().map(|v| (v - 1.0).abs())));
        if !crate::symmat::is_positive_definite(&c) || !crate::symmat::is_positive_definite(&a) {
            not_pd += 1.0;
        }
    }

    Ok(vec![
        Check::le("elliptical.gaussian_covariance_matching", gauss, 0.05, 0.0),
        Check::le("elliptical.student_t_covariance_matching", student, 0.10, 0.0),
        Check::le("elliptical.deterministic", if same { 0.0 } else { 1.0 }, 0.0, 0.0),
        Check::le("elliptical.random_pd_condition", cond_excess, 1.0, 1e-6),
        Check::le("elliptical.random_pd_and_correlation_pd", not_pd, 0.0, 0.0),
        Check::le("elliptical.correlation_unit_diagonal", unit_diag, 0.0, 1e-12),
    ])
}

fn random_cloud(rng: &mut ChaCha8Rng, n: usize, dim: usize, spread: f64) -> Result<SampleSet> {
    let offset: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|d| offset[d] + spread * rng.random_range(-1.0..1.0)).collect())
        .collect();
    SampleSet::from_rows(&rows, 0)
}

fn ot_properties(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut rng = cfg.rng(30);
    let (mut asym, mut triangle, mut perm_shift) = (0.0f64, f64::INFINITY, 0.0f64);
    for k in 0..cfg.count(50) {
        let n = 4 + k % 28;
        let dim = 1 + k % 3;
        let x = random_cloud(&mut rng, n, dim, 1.0)?;
        let y = random_cloud(&mut rng, n, dim, 2.0)?;
        let z = random_cloud(&mut rng, n, dim, 0.5)?;
        let xy = empirical_w2(&x, &y)?;
        asym = asym.max((xy - empirical_w2(&y, &x)?).abs());
        let yz = empirical_w2(&y, &z)?;
        let xz = empirical_w2(&x, &z)?;
        triangle = triangle.min(xy + yz - xz);
        let mut px: Vec<usize> = (0..n).collect();
        let mut py: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            px.swap(i, rng.random_range(0..=i));
            py.swap(i, rng.random_range(0..=i));
        }
        perm_shift = perm_shift.max((empirical_w2(&x.permuted(&px), &y.permuted(&py))? - xy).abs());
    }

    // Gelbrich on arbitrary empirical laws, with and without the mean term
    let (mut margin, mut margin_mean) = (f64::INFINITY, f64::INFINITY);
    for k in 0..cfg.count(100) {
        let n = 8 + k % 57;
        let dim = 1 + k % 4;
        let x = random_cloud(&mut rng, n, dim, 1.5)?;
        let y = random_cloud(&mut rng, n, dim, 0.7)?;
        let w = empirical_w2(&x, &y)?;
        let g = gelbrich_bound(&sample_covariance(&x, true)?, &sample_covariance(&y, true)?)?;
        let shift: f64 = x.mean().iter().zip(y.mean()).map(|(a, b)| (a - b) * (a - b)).sum();
        margin = margin.min(w - g);
        margin_mean = margin_mean.min(w * w - (shift + g * g));
    }

    let mut roundtrip_failures = 0.0;
    for k in 0..cfg.count(100) {
        let n = 1 + k % 6;
        let scale = 10f64.powi((k % 21) as i32 - 10);
        let a = random_pd(n, cfg.seed_for(31, k as u64), 1e4).scaled(scale);
        let back = csvio::parse_sym_matrix(&csvio::format_sym_matrix(&a))?;
        if a.as_slice().iter().zip(back.as_slice()).any(|(p, q)| p.to_bits() != q.to_bits()) {
            roundtrip_failures += 1.0;
        }
    }

    Ok(vec![
        Check::le("discrete_ot.symmetry", asym, 0.0, 1e-10),
        Check::ge("discrete_ot.triangle", triangle, 0.0, 1e-9),
        Check::le("discrete_ot.permutation_invariance", perm_shift, 0.0, 1e-12),
        Check::ge("discrete_ot.gelbrich_certification", margin, 0.0, 1e-8),
        Check::ge("discrete_ot.gelbrich_certification_with_mean", margin_mean, 0.0, 1e-8),
        Check::le("cli.csv_roundtrip", roundtrip_failures, 0.0, 0.0),
    ])
}

/// Shared corpus for the trace-inequality criteria: every fourth member is
/// diagonal, the rest are dense; dimension 2–6, condition number ≤ 1e4.
fn trace_corpus(cfg: &VerifyConfig) -> Vec<SymMatrix> {
    (0..cfg.count(200))
        .map(|k| {
            let n = 2 + k % 5;
            let a = random_pd(n, cfg.seed_for(40, k as u64), 1e4);
            if k % 4 == 0 {
                SymMatrix::from_diagonal(&a.diagonal())
            } else {
                a
            }
        })
        .collect()
}

/// Criteria 1–3.
fn trace_inequalities(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let corpus = trace_corpus(cfg);
    let mut all_gaps = Vec::with_capacity(corpus.len());
    let mut diagonal_gaps = Vec::new();
    let mut dense_gaps = Vec::new();
    for s in &corpus {
        let gap = trace_sqrt_gap(s)?;
        all_gaps.push(gap);
        if s.off_diagonal_max() == 0.0 {
            diagonal_gaps.push(gap.abs());
        }
        if s.off_diagonal_frobenius() >= 0.1 {
            dense_gaps.push(gap);
        }
    }
    let mut checks = vec![
        Check::ge("trace_sqrt_gap.nonnegative", min_of(all_gaps), 0.0, 1e-10).criterion(1),
        Check::le("trace_sqrt_gap.zero_on_diagonal", max_of(diagonal_gaps.iter().copied()), 0.0, 1e-10)
            .criterion(1),
        Check::gt("trace_sqrt_gap.positive_off_diagonal", min_of(dense_gaps.iter().copied()), 1e-6).criterion(1),
        Check::ge(
            "trace_sqrt_gap.corpus_has_both_kinds",
            diagonal_gaps.len().min(dense_gaps.len()) as f64,
            1.0,
            0.0,
        )
        .criterion(1),
    ];

    for q in [0.1, 0.25, 0.5, 0.75, 0.9] {
        let gaps = corpus
            .iter()
            .map(|s| trace_power_gap(s, q))
            .collect::<Result<Vec<f64>>>()?;
        checks.push(Check::ge(format!("trace_power_gap.nonnegative.q={q}"), min_of(gaps), 0.0, 1e-10).criterion(2));
    }

    let (mut cancel, mut lhs_min, mut order) = (0.0f64, f64::INFINITY, f64::INFINITY);
    for s in &corpus {
        let k = klein_residual(s)?;
        cancel = cancel.max(k.rhs.abs() / (1.0 + s.max_abs()));
        lhs_min = lhs_min.min(k.lhs);
        order = order.min(k.lhs - k.rhs);
    }
    checks.push(Check::le("klein.rhs_cancels", cancel, 0.0, 1e-10).criterion(3));
    checks.push(Check::ge("klein.lhs_nonnegative", lhs_min, 0.0, 1e-10).criterion(3));
    checks.push(Check::ge("klein.lhs_ge_rhs", order, 0.0, 1e-10).criterion(3));
    Ok(checks)
}

/// Criterion 4: at fixed diagonal, decorrelating the target minimizes the
/// distance from a diagonal law.
fn minimization(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let (mut diag_err, mut margin, mut strict) = (0.0f64, f64::INFINITY, f64::INFINITY);
    let mut strict_count = 0usize;
    for k in 0..cfg.count(200) {
        let n = 2 + k % 5;
        let lx = random_pd(n, cfg.seed_for(50, k as u64), 1e2).diagonal();
        let dy = random_pd(n, cfg.seed_for(51, k as u64), 1e2).diagonal();
        let c = random_correlation(n, cfg.seed_for(52, k as u64));
        let root: Vec<f64> = dy.iter().map(|v| v.sqrt()).collect();
        let sigma_y = SymMatrix::from_upper_fn(n, |i, j| root[i] * c[(i, j)] * root[j]);
        diag_err = diag_err.max(max_of(
            sigma_y.diagonal().iter().zip(&dy).map(|(a, b)| (a - b).abs() / b),
        ));
        let lambda_x = SymMatrix::from_diagonal(&lx);
        let decorrelated = w2_closed(&lambda_x, &SymMatrix::from_diagonal(&dy))?;
        let correlated = w2_closed(&lambda_x, &sigma_y)?;
        margin = margin.min(correlated - decorrelated);
        if c.sub(&SymMatrix::identity(n)).frobenius() >= 0.1 {
            strict = strict.min(correlated - decorrelated);
            strict_count += 1;
        }
    }
    Ok(vec![
        Check::le("minimization.target_diagonal_preserved", diag_err, 0.0, 1e-12).criterion(4),
        Check::ge("minimization.decorrelated_is_closer", margin, 0.0, 1e-9).criterion(4),
        Check::gt("minimization.strict_when_correlated", strict, 1e-6).criterion(4),
        Check::ge("minimization.strict_cases_present", strict_count as f64, 1.0, 0.0).criterion(4),
    ])
}

/// Criteria 5 and 6.
fn bound_chain(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let (mut chain, mut eb_min) = (f64::INFINITY, f64::INFINITY);
    for k in 0..cfg.count(200) {
        let n = 1 + k % 6;
        let x = random_pd(n, cfg.seed_for(60, k as u64), 1e3);
        let y = random_pd(n, cfg.seed_for(61, k as u64), 1e3);
        let eb = eigenbasis_bound(&x, &y)?.bound;
        chain = chain.min(gelbrich_bound(&x, &y)? - eb);
        eb_min = eb_min.min(eb);
    }

    let mut equality = 0.0f64;
    let mut rng = cfg.rng(62);
    for k in 0..cfg.count(100) {
        let n = 1 + k % 6;
        let x = random_pd(n, cfg.seed_for(63, k as u64), 1e3);
        let target: Vec<f64> = (0..n).map(|_| (rng.random_range(-3.0..1.0f64)).exp()).collect();
        let y = minimizer_covariance(&x, &VarianceVector::new(target)?)?;
        let g = gelbrich_bound(&x, &y)?;
        let eb = eigenbasis_bound(&x, &y)?.bound;
        equality = equality.max((g - eb).abs() / (1.0 + g));
    }

    Ok(vec![
        Check::ge("bound_chain.gelbrich_ge_eigenbasis", chain, 0.0, 1e-9).criterion(5),
        Check::ge("bound_chain.eigenbasis_nonnegative", eb_min, 0.0, 0.0).criterion(5),
        Check::le("bound_chain.equality_at_minimizer", equality, 0.0, 1e-8).criterion(6),
    ])
}

/// Criterion 7: Hungarian against exhaustive enumeration.
fn oracle_agreement(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut rng = cfg.rng(70);
    let mut worst = 0.0f64;
    for k in 0..cfg.count(100) {
        let n = 2 + k % 6;
        let entries: Vec<f64> = match k % 3 {
            0 => (0..n * n).map(|_| rng.random_range(0.0..1.0)).collect(),
            // small integers: plenty of exact ties
            1 => (0..n * n).map(|_| rng.random_range(0..10u32) as f64).collect(),
            _ => {
                let x = random_cloud(&mut rng, n, 2, 1.0)?;
                let y = random_cloud(&mut rng, n, 2, 1.0)?;
                let c = crate::discrete_ot::cost_matrix(&x, &y)?;
                (0..n * n).map(|e| c.get(e / n, e % n)).collect()
            }
        };
        let c = CostMatrix::new(n, entries)?;
        let fast = assignment_min(&c).total_cost;
        let exact = brute_force_min(&c)?.total_cost;
        worst = worst.max((fast - exact).abs());
    }
    Ok(vec![Check::le("oracle.hungarian_equals_brute_force", worst, 0.0, 0.0).criterion(7)])
}

const EMPIRICAL_N: usize = 512;
const EMPIRICAL_TRIALS: usize = 20;

fn empirical_trials(cfg: &VerifyConfig) -> usize {
    cfg.count(EMPIRICAL_TRIALS).max(2)
}

fn gelbrich_checks(prefix: &str, criterion: u32, trials: &[TrialOutcome]) -> Vec<Check> {
    vec![
        Check::ge(
            format!("{prefix}.per_trial_gelbrich"),
            min_of(trials.iter().map(TrialOutcome::gelbrich_margin)),
            0.0,
            1e-8,
        )
        .criterion(criterion),
        Check::ge(
            format!("{prefix}.per_trial_gelbrich_with_mean"),
            min_of(trials.iter().map(TrialOutcome::gelbrich_margin_with_mean)),
            0.0,
            1e-8,
        )
        .criterion(criterion),
    ]
}

/// Criteria 8 and 9: `diag(1,4)` against `diag(4,1)`, closed form `√2`.
fn empirical_elliptical(cfg: &VerifyConfig, criterion: u32, generator: Generator) -> Result<Vec<Check>> {
    let cov_x = SymMatrix::from_diagonal(&[1.0, 4.0]);
    let cov_y = SymMatrix::from_diagonal(&[4.0, 1.0]);
    let closed = w2_closed(&cov_x, &cov_y)?;
    let x: Law = EllipticalSpec::new(generator, cov_x)?.into();
    let y: Law = EllipticalSpec::new(generator, cov_y)?.into();
    let trials = run_trials(&x, &y, EMPIRICAL_N, cfg.seed_for(80 + criterion as u64, 0), empirical_trials(cfg))?;

    let prefix = format!("empirical.{}", generator.name());
    let mut checks = gelbrich_checks(&prefix, criterion, &trials);
    checks.push(Check::le(format!("{prefix}.closed_form_is_sqrt2"), (closed - 2f64.sqrt()).abs(), 0.0, 1e-12).criterion(criterion));

    let mean = trials.iter().map(|t| t.empirical).sum::<f64>() / trials.len() as f64;
    let gaussian = matches!(generator, Generator::Gaussian);
    let (lo, hi) = match (cfg.quick, gaussian) {
        (false, true) => GAUSSIAN_MEAN_ENVELOPE,
        (false, false) => STUDENT_T_MEAN_ENVELOPE,
        (true, true) => GAUSSIAN_TRIAL_ENVELOPE,
        (true, false) => STUDENT_T_TRIAL_ENVELOPE,
    };
    checks.push(Check::ge(format!("{prefix}.mean_above_envelope"), mean, closed * (1.0 - lo), 0.0).criterion(criterion));
    checks.push(Check::le(format!("{prefix}.mean_below_envelope"), mean, closed * (1.0 + hi), 0.0).criterion(criterion));
    Ok(checks)
}

/// Criterion 10: Gaussian against an equal-weight two-Gaussian mixture.
fn empirical_mixture(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let cov_x = SymMatrix::from_diagonal(&[1.0, 4.0]);
    let cov_y = SymMatrix::from_rows(&[vec![4.0, 0.5], vec![0.5, 1.0]])?;
    let mixture = GaussianPairMixture::with_total_covariance(&cov_y, vec![1.5, 0.3])?;

    let big = mixture.sample_stream(100_000, cfg.seed_for(90, 0), 0)?;
    let cov_err = sample_covariance(&big, false)?.max_abs_diff(&cov_y) / cov_y.max_abs();

    let x: Law = EllipticalSpec::gaussian(cov_x.clone())?.into();
    let y: Law = mixture.into();
    let trials = run_trials(&x, &y, EMPIRICAL_N, cfg.seed_for(91, 0), empirical_trials(cfg))?;
    let mut checks = vec![Check::le("empirical.mixture.covariance_matches", cov_err, 0.05, 0.0).criterion(10)];
    checks.extend(gelbrich_checks("empirical.mixture", 10, &trials));
    // sanity: the population bound itself is below every trial on average
    let population = gelbrich_bound(&cov_x, &cov_y)?;
    let mean = trials.iter().map(|t| t.empirical).sum::<f64>() / trials.len() as f64;
    checks.push(Check::ge("empirical.mixture.mean_above_population_gelbrich", mean, population, 1e-8).criterion(10));
    Ok(checks)
}
