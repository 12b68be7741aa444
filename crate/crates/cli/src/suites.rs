//! The property batteries behind the runner.
//!
//! Each battery walks the configured sizes and trials, derives every random
//! object from a child seed, and folds each check into a normalized
//! violation (see [`crate::report`]). Checks that are global rather than
//! per-size (the anchored cocycle value, the 6-by-6 regularizer battery)
//! contribute their own stat row with the size they actually run at.
//!
//! Trials never influence one another: all randomness flows through
//! [`crate::seeds::child_seed`], so a subset run reproduces exactly the
//! numbers of the full run.

use nalgebra::{Complex, DMatrix};
use resgrass_core::ensemble::{random_predual, random_skew, EnsembleSpec};
use resgrass_core::extension::{
    coadjoint, extended_bracket, extended_pairing, poisson_bracket, schwinger, ExtendedElement,
    SmoothFunctional,
};
use resgrass_core::grassmann::{
    act, chart_forward, chart_inverse, fredholm_regularizer, membership_defect, operator_rank,
    relative_index, transition, transitivity_witness, ChartValue, GrassmannPoint,
};
use resgrass_core::operator::{
    commutator, exp_skew, make_d, skew_commutator, BlockOperator, PolarizedSpace,
    RestrictedUnitary, SkewHermitian,
};
use resgrass_core::orbit::{
    affine_action, homogeneous_form, isotropy_defect, kks_form, orbit_embed, sigma, OrbitPoint,
};
use resgrass_core::schatten::{
    canonical_skew_basis, l1q_norm, numerical_rank, offdiagonal_skew_basis, pairing, pairing_gram,
    restricted_norm, restricted_trace, schatten_norm, SchattenExponent,
};

use crate::config::{ExperimentConfig, Suite};
use crate::report::{SizeStat, SuiteReport, Worst};
use crate::seeds::{child_seed, derive};

type CMatrix = DMatrix<Complex<f64>>;

/// Pairing Gram matrices scale as dim⁴ entries; above this total dimension
/// the per-size nondegeneracy check is skipped.
pub const GRAM_DIM_CAP: usize = 16;

/// The off-diagonal form Gram has 2·n₊·n₋ rows; above this product the
/// per-size rank check is skipped.
pub const FORM_GRAM_PRODUCT_CAP: usize = 256;

/// Finite-difference gradient checks cost dim² functional evaluations each,
/// so they run only on the first few trials per size.
const FD_TRIALS: u32 = 5;

/// Runs one of the six per-trial batteries. The convergence suite lives in
/// [`crate::convergence`] and is dispatched by the runner.
///
/// # Panics
/// If called with [`Suite::Convergence`], or on an unvalidated config.
pub fn run_suite(cfg: &ExperimentConfig, suite: Suite) -> SuiteReport {
    match suite {
        Suite::Trace => trace(cfg),
        Suite::Duality => duality(cfg),
        Suite::Cocycle => cocycle(cfg),
        Suite::Grassmann => grassmann(cfg),
        Suite::Orbit => orbit(cfg),
        Suite::Symplectic => symplectic(cfg),
        Suite::Convergence => panic!("the convergence suite is dispatched by the runner"),
    }
}

fn space_of(size: (usize, usize)) -> PolarizedSpace {
    PolarizedSpace::new(size.0, size.1).expect("sizes are validated before dispatch")
}

fn spec_at(cfg: &ExperimentConfig, seed: u64) -> EnsembleSpec {
    EnsembleSpec::new(seed, cfg.decay_alpha, 1.0).expect("decay_alpha is validated")
}

fn skew_at(cfg: &ExperimentConfig, sp: PolarizedSpace, seed: u64) -> SkewHermitian {
    random_skew(sp, &spec_at(cfg, seed), cfg.p).expect("p is validated")
}

fn predual_at(cfg: &ExperimentConfig, sp: PolarizedSpace, seed: u64) -> SkewHermitian {
    let q = SchattenExponent::Finite(cfg.p).conjugate();
    random_predual(sp, &spec_at(cfg, seed), q).expect("the conjugate exponent is admissible")
}

fn unitary_at(cfg: &ExperimentConfig, sp: PolarizedSpace, seed: u64) -> RestrictedUnitary {
    exp_skew(&skew_at(cfg, sp, seed))
}

/// General operator: skew plus i times skew spans every matrix.
fn operator_at(cfg: &ExperimentConfig, sp: PolarizedSpace, seed: u64) -> BlockOperator {
    let s1 = skew_at(cfg, sp, derive(seed, 0));
    let s2 = skew_at(cfg, sp, derive(seed, 1));
    s1.as_operator() + &s2.as_operator().scale(Complex::new(0.0, 1.0))
}

/// General predual-weighted operator, same decomposition trick.
fn predual_operator_at(cfg: &ExperimentConfig, sp: PolarizedSpace, seed: u64) -> BlockOperator {
    let s1 = predual_at(cfg, sp, derive(seed, 0));
    let s2 = predual_at(cfg, sp, derive(seed, 1));
    s1.as_operator() + &s2.as_operator().scale(Complex::new(0.0, 1.0))
}

fn random_point(cfg: &ExperimentConfig, sp: PolarizedSpace, seed: u64) -> GrassmannPoint {
    act(&unitary_at(cfg, sp, seed), &GrassmannPoint::h_plus(sp))
}

/// Platform-exact uniform real in [−1, 1) from integer bits.
fn unit_real(seed: u64) -> f64 {
    (seed >> 11) as f64 / (1u64 << 52) as f64 - 1.0
}

/// Platform-exact uniform real in [0, 1).
fn unit01(seed: u64) -> f64 {
    (seed >> 11) as f64 / (1u64 << 53) as f64
}

/// The worked (1, 1) pair with A₋₊ = 1, B₋₊ = i; the cocycle value is −4.
fn anchored_pair() -> (SkewHermitian, SkewHermitian) {
    let sp = space_of((1, 1));
    let mut am = CMatrix::zeros(2, 2);
    am[(1, 0)] = Complex::new(1.0, 0.0);
    am[(0, 1)] = -am[(1, 0)].conj();
    let mut bm = CMatrix::zeros(2, 2);
    bm[(1, 0)] = Complex::new(0.0, 1.0);
    bm[(0, 1)] = -bm[(1, 0)].conj();
    (
        SkewHermitian::new(BlockOperator::new(sp, am).expect("square")).expect("skew"),
        SkewHermitian::new(BlockOperator::new(sp, bm).expect("square")).expect("skew"),
    )
}

/// Independent block-formula oracle for the Schwinger cocycle:
/// (−2i)Tr(A₊₋B₋₊) + (2i)Tr(A₋₊B₊₋), real part.
fn schwinger_block_oracle(a: &SkewHermitian, b: &SkewHermitian) -> f64 {
    ((a.block_pm() * b.block_mp()).trace() * Complex::new(0.0, -2.0)
        + (a.block_mp() * b.block_pm()).trace() * Complex::new(0.0, 2.0))
    .re
}

/// Both equalities of the conjugation-invariance display, for any
/// invertible g given alongside its inverse.
fn conjugation_checks(
    worst: &mut Worst,
    n: f64,
    alpha: &BlockOperator,
    a: &BlockOperator,
    g: &BlockOperator,
    g_inv: &BlockOperator,
) {
    let conj_a = &(g * a) * g_inv;
    let lhs = restricted_trace(&(alpha * &conj_a));
    let rhs = restricted_trace(&(&(&(g_inv * alpha) * g) * a));
    let scale = n * (1.0 + alpha.frobenius_norm()) * (1.0 + conj_a.frobenius_norm());
    worst.residual((lhs - rhs).norm(), 1e-10, scale);

    let conj_alpha = &(g * alpha) * g_inv;
    let inv_residual = (restricted_trace(&conj_alpha) - restricted_trace(alpha)).norm();
    worst.residual(inv_residual, 1e-10, n * (1.0 + conj_alpha.frobenius_norm()));
}

/// Restricted-trace cyclicity and conjugation invariance.
fn trace(cfg: &ExperimentConfig) -> SuiteReport {
    let suite = Suite::Trace;
    let mut stats = Vec::new();
    for &size in &cfg.sizes {
        let sp = space_of(size);
        let n = sp.dim() as f64;
        let mut worst = Worst::new();
        for trial in 0..cfg.trials {
            let ts = child_seed(cfg.seed, suite.index(), u64::from(trial));
            let a = operator_at(cfg, sp, derive(ts, 0));
            let rho = predual_operator_at(cfg, sp, derive(ts, 1));

            // Cyclicity: at finite truncation both products are trace class.
            let lhs = restricted_trace(&(&a * &rho));
            let rhs = restricted_trace(&(&rho * &a));
            let scale = n * (1.0 + a.frobenius_norm() * rho.frobenius_norm());
            worst.residual((lhs - rhs).norm(), 1e-11, scale);

            // Conjugation invariance under a restricted unitary.
            let g = unitary_at(cfg, sp, derive(ts, 2));
            conjugation_checks(
                &mut worst,
                n,
                &rho,
                &a,
                g.as_operator(),
                g.inverse().as_operator(),
            );

            // Invariance holds for every invertible element, so also
            // conjugate by a well-conditioned non-unitary I + X.
            let x = operator_at(cfg, sp, derive(ts, 3));
            let bounded = x.scale_re(0.3 / (1.0 + x.operator_norm()));
            let h = &BlockOperator::identity(sp) + &bounded;
            let h_inv_matrix = h
                .matrix()
                .clone()
                .try_inverse()
                .expect("I + X with opnorm(X) < 1 is invertible");
            let h_inv = BlockOperator::new(sp, h_inv_matrix).expect("square");
            conjugation_checks(&mut worst, n, &rho, &a, &h, &h_inv);
        }
        stats.push(SizeStat {
            size,
            max_violation: worst.value(),
        });
    }
    SuiteReport::from_stats(suite, cfg.trials, stats)
}

/// Pairing symmetry, reality, Hölder bounds, norm domination, and the
/// Gram nondegeneracy of the duality pairing.
fn duality(cfg: &ExperimentConfig) -> SuiteReport {
    let suite = Suite::Duality;
    let pe = SchattenExponent::Finite(cfg.p);
    let qe = pe.conjugate();
    let mut stats = Vec::new();
    for &size in &cfg.sizes {
        let sp = space_of(size);
        let n = sp.dim() as f64;
        let mut worst = Worst::new();

        // Nondegeneracy: the pairing Gram on the full skew basis has full
        // rank. The Gram is dim⁴ entries, so large sizes are skipped.
        if cfg.trials > 0 && sp.dim() <= GRAM_DIM_CAP {
            let basis = canonical_skew_basis(sp);
            let gram = pairing_gram(&basis, &basis);
            worst.check(numerical_rank(&gram, 1e-8) == basis.len());
        }

        for trial in 0..cfg.trials {
            let ts = child_seed(cfg.seed, suite.index(), u64::from(trial));
            let rho = predual_at(cfg, sp, derive(ts, 0));
            let a = skew_at(cfg, sp, derive(ts, 1));

            // Symmetry of the pairing through trace cyclicity.
            let t1 = restricted_trace(&(rho.as_operator() * a.as_operator()));
            let t2 = restricted_trace(&(a.as_operator() * rho.as_operator()));
            let fro = 1.0 + rho.frobenius_norm() * a.frobenius_norm();
            worst.residual((t1 - t2).norm(), 1e-11, n * fro);

            // Reality on skew-Hermitian pairs.
            worst.residual(t1.im.abs(), 1e-10, fro);

            // Hölder: |⟨ρ, A⟩| ≤ ‖ρ‖_{1,q}·‖A‖_{res,p}.
            let bound = l1q_norm(rho.as_operator(), qe) * restricted_norm(a.as_operator(), pe);
            let excess = (pairing(&rho, &a).abs() - bound).max(0.0);
            worst.residual(excess, 1e-12, 1.0 + bound);

            // The restricted norm dominates the operator norm.
            let res = restricted_norm(a.as_operator(), pe);
            worst.residual((a.operator_norm() - res).max(0.0), 1e-12, 1.0 + res);

            // Predual triangle inequality.
            let rho2 = predual_at(cfg, sp, derive(ts, 2));
            let sum = rho.as_operator() + rho2.as_operator();
            let parts = l1q_norm(rho.as_operator(), qe) + l1q_norm(rho2.as_operator(), qe);
            worst.residual((l1q_norm(&sum, qe) - parts).max(0.0), 1e-12, 1.0 + parts);
        }
        stats.push(SizeStat {
            size,
            max_violation: worst.value(),
        });
    }
    SuiteReport::from_stats(suite, cfg.trials, stats)
}

/// Schwinger cocycle identities, the extended bracket, and the coadjoint
/// adjoint relation.
fn cocycle(cfg: &ExperimentConfig) -> SuiteReport {
    let suite = Suite::Cocycle;

    // The anchored (1, 1) value pins the sign and normalization once.
    let mut anchored = Worst::new();
    if cfg.trials > 0 {
        let (a, b) = anchored_pair();
        anchored.residual((schwinger(&a, &b, cfg.p) + 4.0).abs(), 1e-12, 1.0);
    }
    let mut stats = vec![SizeStat {
        size: (1, 1),
        max_violation: anchored.value(),
    }];

    for &size in &cfg.sizes {
        let sp = space_of(size);
        let d = make_d(sp);
        let pe = SchattenExponent::Finite(cfg.p);
        let mut worst = Worst::new();
        for trial in 0..cfg.trials {
            let ts = child_seed(cfg.seed, suite.index(), u64::from(trial));
            let a = skew_at(cfg, sp, derive(ts, 0));
            let b = skew_at(cfg, sp, derive(ts, 1));
            let cc = skew_at(cfg, sp, derive(ts, 2));
            let s_ab = schwinger(&a, &b, cfg.p);
            let fro2 = (1.0 + a.frobenius_norm() * b.frobenius_norm()).powi(2);

            // Antisymmetry.
            worst.residual((s_ab + schwinger(&b, &a, cfg.p)).abs(), 1e-12, fro2);

            // Agreement with the independent block formula.
            worst.residual((s_ab - schwinger_block_oracle(&a, &b)).abs(), 1e-12, fro2);

            // Reality residue of the defining trace.
            let t = restricted_trace(
                &(a.as_operator() * &commutator(d.as_operator(), b.as_operator())),
            );
            worst.residual(t.im.abs(), 1e-11, fro2);

            // Cocycle identity: the cyclic sum vanishes.
            let cyc = schwinger(&skew_commutator(&a, &b), &cc, cfg.p)
                + schwinger(&skew_commutator(&cc, &a), &b, cfg.p)
                + schwinger(&skew_commutator(&b, &cc), &a, cfg.p);
            let ops = a
                .operator_norm()
                .max(b.operator_norm())
                .max(cc.operator_norm());
            worst.residual(cyc.abs(), 1e-10, ops.powi(3).max(1.0));

            // Continuity bound, strict: |s| ≤ 2‖A‖_{res,p}‖B‖_{res,p}.
            let bound =
                2.0 * restricted_norm(a.as_operator(), pe) * restricted_norm(b.as_operator(), pe);
            worst.check(s_ab.abs() <= bound);

            // Jacobi identity of the extended bracket.
            let x = ExtendedElement::new(a.clone(), unit_real(derive(ts, 10)));
            let y = ExtendedElement::new(b.clone(), unit_real(derive(ts, 11)));
            let z = ExtendedElement::new(cc.clone(), unit_real(derive(ts, 12)));
            let j1 = extended_bracket(&extended_bracket(&x, &y, cfg.p), &z, cfg.p);
            let j2 = extended_bracket(&extended_bracket(&z, &x, cfg.p), &y, cfg.p);
            let j3 = extended_bracket(&extended_bracket(&y, &z, cfg.p), &x, cfg.p);
            let op_sum = &(j1.operator() + j2.operator()) + j3.operator();
            let jac = op_sum.frobenius_norm() + (j1.scalar() + j2.scalar() + j3.scalar()).abs();
            worst.residual(jac, 1e-9, ops.powi(3).max(1.0));

            // Coadjoint is adjoint to the bracket under the pairing.
            let m = ExtendedElement::new(
                predual_at(cfg, sp, derive(ts, 13)),
                unit_real(derive(ts, 14)),
            );
            let lhs = extended_pairing(&coadjoint(&x, &m), &y);
            let rhs = -extended_pairing(&m, &extended_bracket(&x, &y, cfg.p));
            let scale =
                1.0 + m.operator().frobenius_norm() + a.frobenius_norm() * b.frobenius_norm();
            worst.residual((lhs - rhs).abs(), 1e-9, scale);
        }
        stats.push(SizeStat {
            size,
            max_violation: worst.value(),
        });
    }
    SuiteReport::from_stats(suite, cfg.trials, stats)
}

/// Atlas roundtrips and transitions, transitivity of the action, the
/// index, and the Fredholm regularizer rank bound.
fn grassmann(cfg: &ExperimentConfig) -> SuiteReport {
    let suite = Suite::Grassmann;

    // Regularizer battery on a fixed 6-by-6 space: plant a defect of
    // known rank and bound rank(AB − I).
    let sp6 = space_of((3, 3));
    let mut reg = Worst::new();
    for trial in 0..cfg.trials {
        let ts = child_seed(cfg.seed, suite.index(), u64::from(trial));
        let u1 = unitary_at(cfg, sp6, derive(ts, 40));
        let u2 = unitary_at(cfg, sp6, derive(ts, 41));
        let defect_rank = (derive(ts, 42) % 4) as usize;
        let mut sigma_m = CMatrix::zeros(6, 6);
        for i in 0..6 - defect_rank {
            sigma_m[(i, i)] = Complex::new(0.5 + 1.5 * unit01(derive(ts, 43 + i as u64)), 0.0);
        }
        let sig_op = BlockOperator::new(sp6, sigma_m).expect("square");
        let a = &(u1.as_operator() * &sig_op) * &u2.as_operator().adjoint();
        let b = fredholm_regularizer(&a, 1e-8);
        let id = BlockOperator::identity(sp6);
        let p_rank = operator_rank(&(&(&b * &a) - &id), 1e-8);
        let q_rank = operator_rank(&(&(&a * &b) - &id), 1e-8);
        reg.check(q_rank <= p_rank + 2 * defect_rank);
        reg.check(6 - operator_rank(&a, 1e-8) == defect_rank);
    }
    let mut stats = vec![SizeStat {
        size: (3, 3),
        max_violation: reg.value(),
    }];

    for &size in &cfg.sizes {
        let sp = space_of(size);
        let hp = GrassmannPoint::h_plus(sp);
        let d = make_d(sp);
        let pe = SchattenExponent::Finite(cfg.p);
        let mut worst = Worst::new();
        for trial in 0..cfg.trials {
            let ts = child_seed(cfg.seed, suite.index(), u64::from(trial));
            let v = random_point(cfg, sp, derive(ts, 0));

            // A bounded graph keeps W inside the chart of V.
            let graph = skew_at(cfg, sp, derive(ts, 1)).block_mp().map(|z| z * 0.4);
            let value = ChartValue::new(v.clone(), graph.clone()).expect("shape (n−k)×k");
            let w = chart_inverse(&value);

            // Chart roundtrip in both directions.
            match chart_forward(&v, &w) {
                Ok(back) => {
                    worst.residual((back.graph_op() - &graph).norm(), 1e-9, 1.0 + graph.norm());
                    worst.residual(chart_inverse(&back).distance(&w), 1e-9, 1.0);
                }
                Err(_) => worst.check(false),
            }

            // The self-transition is the identity, bitwise.
            match transition(&v, &value) {
                Ok(idt) => worst.check(idt.graph_op() == value.graph_op()),
                Err(_) => worst.check(false),
            }

            // Transition against the composed-chart oracle; pairs outside
            // the overlap are skipped, deterministically under the seed.
            let e = random_point(cfg, sp, derive(ts, 2));
            if let (Ok(t), Ok(oracle)) = (transition(&e, &value), chart_forward(&e, &w)) {
                worst.residual(
                    (t.graph_op() - oracle.graph_op()).norm(),
                    1e-9,
                    1.0 + oracle.graph_op().norm(),
                );
                // Triple overlap: V→E→F equals V→F.
                let f = random_point(cfg, sp, derive(ts, 3));
                if let (Ok(tf), Ok(direct)) = (transition(&f, &t), transition(&f, &value)) {
                    worst.residual(
                        (tf.graph_op() - direct.graph_op()).norm(),
                        1e-8,
                        1.0 + direct.graph_op().norm(),
                    );
                }
            }

            // Transitivity: the constructed witness moves H₊ onto W, and
            // the membership defect obeys the commutator bound.
            let windex = random_point(cfg, sp, derive(ts, 4));
            worst.check(relative_index(&windex).map(|i| i == 0).unwrap_or(false));
            let g = transitivity_witness(&windex);
            worst.residual(act(&g, &hp).distance(&windex), 1e-9, 1.0);
            let md = membership_defect(&windex, pe);
            let bound = schatten_norm(&commutator(g.as_operator(), d.as_operator()), pe);
            worst.residual((md - bound).max(0.0), 1e-9, 1.0);
        }
        stats.push(SizeStat {
            size,
            max_violation: worst.value(),
        });
    }
    SuiteReport::from_stats(suite, cfg.trials, stats)
}

/// The cocycle sigma, the affine action, isotropy, and the moment-map
/// identification of the orbit with the Grassmannian.
fn orbit(cfg: &ExperimentConfig) -> SuiteReport {
    let suite = Suite::Orbit;
    let gamma = cfg.gamma;
    let mut stats = Vec::new();
    for &size in &cfg.sizes {
        let sp = space_of(size);
        let mut worst = Worst::new();
        for trial in 0..cfg.trials {
            let ts = child_seed(cfg.seed, suite.index(), u64::from(trial));
            let g = unitary_at(cfg, sp, derive(ts, 0));
            let h = unitary_at(cfg, sp, derive(ts, 1));

            // One-cocycle relation sigma(gh) = sigma(g) + g·sigma(h)·g*.
            let lhs = sigma(&(&g * &h));
            let rhs = &sigma(&g) + &g.conjugate_skew(&sigma(&h));
            let sc = 1.0 + sigma(&g).frobenius_norm() + sigma(&h).frobenius_norm();
            worst.residual((&lhs - &rhs).frobenius_norm(), 1e-9, sc);

            // The affine action is a group action.
            let m = affine_action(
                &unitary_at(cfg, sp, derive(ts, 2)),
                &OrbitPoint::vacuum(sp, gamma),
            );
            let once = affine_action(&(&g * &h), &m);
            let twice = affine_action(&g, &affine_action(&h, &m));
            worst.residual(
                (once.mu() - twice.mu()).frobenius_norm(),
                1e-9,
                1.0 + m.mu().frobenius_norm(),
            );

            // Isotropy of the vacuum, both directions: block-diagonal
            // unitaries fix it, off-diagonal perturbations do not.
            let diag = skew_at(cfg, sp, derive(ts, 3)).diagonal();
            worst.residual(
                isotropy_defect(&exp_skew(&diag), gamma),
                1e-9,
                1.0 + gamma.abs(),
            );
            let off = skew_at(cfg, sp, derive(ts, 4)).offdiagonal();
            let perturbed = exp_skew(&(&diag + &off.scale_re(0.5)));
            worst.check(isotropy_defect(&perturbed, gamma) > 1e-6);

            // Moment-map equivariance.
            let w = random_point(cfg, sp, derive(ts, 5));
            let lhs_m = orbit_embed(&act(&g, &w), gamma);
            let rhs_m = affine_action(&g, &orbit_embed(&w, gamma));
            worst.residual(
                (lhs_m.mu() - rhs_m.mu()).frobenius_norm(),
                1e-9,
                1.0 + rhs_m.mu().frobenius_norm(),
            );

            // Identification is invertible: reconstruct, then embed back.
            let back = lhs_m
                .reconstruct_point()
                .expect("embedded points lie on the orbit");
            worst.residual(
                (orbit_embed(&back, gamma).mu() - lhs_m.mu()).frobenius_norm(),
                1e-9,
                1.0 + lhs_m.mu().frobenius_norm(),
            );
            worst.residual(back.distance(&act(&g, &w)), 1e-9, 1.0);

            // The linearized action at the vacuum is the coadjoint action.
            let x = skew_at(cfg, sp, derive(ts, 6));
            let eps = 1e-6;
            let moved = affine_action(&exp_skew(&x.scale_re(eps)), &OrbitPoint::vacuum(sp, gamma));
            let derivative = moved.mu().scale_re(1.0 / eps);
            let expect = coadjoint(
                &ExtendedElement::new(x, 0.0),
                &ExtendedElement::central(sp, gamma),
            );
            worst.residual(
                (&derivative - expect.operator()).operator_norm(),
                1e-4,
                expect.operator().operator_norm().max(1.0),
            );
        }
        stats.push(SizeStat {
            size,
            max_violation: worst.value(),
        });
    }
    SuiteReport::from_stats(suite, cfg.trials, stats)
}

/// The homogeneous and orbit 2-forms, their proportionality, the Gram rank
/// on the off-diagonal complement, and the Poisson bracket.
fn symplectic(cfg: &ExperimentConfig) -> SuiteReport {
    let suite = Suite::Symplectic;
    let gamma = cfg.gamma;
    let p = cfg.p;
    let mut stats = Vec::new();
    for &size in &cfg.sizes {
        let sp = space_of(size);
        let mut worst = Worst::new();

        // Once per size: the form is nondegenerate on m_p, with rank
        // exactly 2·n₊·n₋. Skipped above the product cap (the Gram is
        // quadratic in that product).
        if cfg.trials > 0 && sp.n_plus() * sp.n_minus() <= FORM_GRAM_PRODUCT_CAP {
            let basis = offdiagonal_skew_basis(sp);
            let dim = basis.len();
            let gram =
                DMatrix::<f64>::from_fn(dim, dim, |i, j| homogeneous_form(&basis[i], &basis[j], p));
            worst.check(numerical_rank(&gram, 1e-8) == dim);
        }

        for trial in 0..cfg.trials {
            let ts = child_seed(cfg.seed, suite.index(), u64::from(trial));
            let a = skew_at(cfg, sp, derive(ts, 0));
            let b = skew_at(cfg, sp, derive(ts, 1));
            let s = schwinger(&a, &b, p);
            let om = homogeneous_form(&a, &b, p);
            let fro2 = (1.0 + a.frobenius_norm() * b.frobenius_norm()).powi(2);

            // Two-path agreement: the homogeneous form is −s/2.
            worst.residual((om + 0.5 * s).abs(), 1e-11, fro2);

            // The orbit form is γ·s by construction, bitwise.
            let kks = kks_form(&a, &b, gamma, p);
            worst.check(kks == gamma * s);

            // Representative independence: diagonal shifts drop out.
            let shift_a = &a + &skew_at(cfg, sp, derive(ts, 2)).diagonal();
            let shift_b = &b + &skew_at(cfg, sp, derive(ts, 3)).diagonal();
            let shifted = kks_form(&shift_a, &shift_b, gamma, p);
            worst.residual((kks - shifted).abs(), 1e-10, (1.0 + gamma.abs()) * fro2);

            // Proportionality of the two forms: ω = −2γ·Ω.
            worst.residual(
                (kks + 2.0 * gamma * om).abs(),
                1e-10,
                (1.0 + gamma.abs()) * fro2,
            );

            // Poisson checks cost dim² evaluations through the forced
            // finite-difference path, so only the first trials run them.
            if trial < FD_TRIALS {
                let at = ExtendedElement::new(
                    predual_at(cfg, sp, derive(ts, 4)),
                    unit_real(derive(ts, 20)),
                );
                let f = SmoothFunctional::linear(ExtendedElement::new(a.clone(), 0.0));
                let gfun = SmoothFunctional::linear(ExtendedElement::new(b.clone(), 0.0));
                let oracle = pairing(at.operator(), &skew_commutator(&a, &b)) + at.scalar() * s;

                worst.residual(
                    (poisson_bracket(&f, &gfun, &at, p) - oracle).abs(),
                    1e-12,
                    1.0 + oracle.abs(),
                );
                worst.residual(
                    (poisson_bracket(&f.without_gradient(), &gfun.without_gradient(), &at, p)
                        - oracle)
                        .abs(),
                    1e-8,
                    1.0 + oracle.abs(),
                );

                // Analytic vs finite-difference gradients on a product.
                let quad = SmoothFunctional::product(&f, &gfun);
                let (ga, gs) = quad.gradient(&at);
                let (fa, fs) = quad.fd_gradient(&at);
                let gscale = 1.0 + ga.frobenius_norm() + gs.abs();
                worst.residual((&ga - &fa).frobenius_norm() + (gs - fs).abs(), 1e-5, gscale);

                // γ-only functionals are Casimirs.
                let casimir = SmoothFunctional::new(|m: &ExtendedElement| m.scalar() * m.scalar());
                worst.residual(poisson_bracket(&casimir, &gfun, &at, p).abs(), 1e-9, 1.0);
            }
        }
        stats.push(SizeStat {
            size,
            max_violation: worst.value(),
        });
    }
    SuiteReport::from_stats(suite, cfg.trials, stats)
}
