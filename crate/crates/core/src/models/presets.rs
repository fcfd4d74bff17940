//! Models and expressions for the worked examples: `A_{n-1}` surface
//! singularities, blow-ups of affine space, the binary dihedral `D_4`
//! quotient, the Lehn-Sorger quotient of `C^4`, and diagonal `C^m / Z_n`.

use super::{
    DeltaFactor, DeltaSum, DeltaTerm, FixedPointDatum, LinearForm, OrbifoldModel,
    OrbifoldPairDatum, Ratio, ResolutionModel, Weight,
};
use crate::error::{Error, Result};

fn require(cond: bool, message: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(message()))
    }
}

/// Minimal resolution of `C^2 / Z_n` with `D_X = a1 D_1 + a2 D_2`.
pub fn a_n_resolution_with_divisor(n: usize, a1: &Ratio, a2: &Ratio) -> Result<ResolutionModel> {
    require(n >= 1, || format!("A_n presets need n >= 1, got {n}"))?;
    let ni = n as i64;
    let inv_n = Ratio::new(1, ni);
    let fixed_points = (1..=ni)
        .map(|k| {
            let e1 = &(&(a1 * &Ratio::int(k)) + &(a2 * &Ratio::int(ni - k))) * &inv_n;
            let e2 = &(&(a1 * &Ratio::int(k - 1)) + &(a2 * &Ratio::int(ni - k + 1))) * &inv_n;
            FixedPointDatum {
                weights: vec![
                    Weight::new(&[ni - k + 1, -(k - 1)]),
                    Weight::new(&[-(ni - k), k]),
                ],
                exponents: vec![e1, e2],
            }
        })
        .collect();
    let model = ResolutionModel {
        rank: 2,
        dim: 2,
        prefactor: Ratio::int(1),
        fixed_points,
        labels: Some((1..=n).map(|k| format!("vertex {k}")).collect()),
    };
    model.validate()?;
    Ok(model)
}

pub fn a_n_resolution(n: usize) -> Result<ResolutionModel> {
    a_n_resolution_with_divisor(n, &Ratio::zero(), &Ratio::zero())
}

/// `C^2 / Z_n` for `Z_n` generated by `diag(e(1/n), e(-1/n))`, divisor `a1 D_1 + a2 D_2`.
pub fn a_n_orbifold_with_divisor(n: usize, a1: &Ratio, a2: &Ratio) -> Result<OrbifoldModel> {
    require(n >= 1, || format!("A_n presets need n >= 1, got {n}"))?;
    let ni = n as i64;
    let mut pairs = Vec::with_capacity(n * n);
    for k in 0..ni {
        for l in 0..ni {
            pairs.push(OrbifoldPairDatum {
                lambda: vec![Ratio::new(k, ni), Ratio::new(ni - k, ni).fract_unit()],
                nu: vec![Ratio::new(l, ni), Ratio::new(ni - l, ni).fract_unit()],
                weights: vec![Weight::unit(2, 0), Weight::unit(2, 1)],
                exponents: vec![a1.clone(), a2.clone()],
                multiplicity: 1,
                h_shift: Ratio::zero(),
            });
        }
    }
    let model = OrbifoldModel {
        dim: 2,
        group_order: n as u64,
        pairs,
    };
    model.validate()?;
    Ok(model)
}

pub fn a_n_orbifold(n: usize) -> Result<OrbifoldModel> {
    a_n_orbifold_with_divisor(n, &Ratio::zero(), &Ratio::zero())
}

/// Variables `[t1, t2, m1, m2]`: the fixed-point sum
/// `sum_{k=1}^n delta(t1^{n-k+1} / t2^{k-1}, m1^k m2^{n-k}) delta(t2^k / t1^{n-k}, m1^{k-1} m2^{n-k+1})`.
pub fn a_n_fixed_point_sum(n: usize) -> DeltaSum {
    let ni = n as i64;
    let terms = (1..=ni)
        .map(|k| {
            DeltaTerm::new(
                4,
                vec![
                    DeltaFactor::new(
                        LinearForm::ints(&[ni - k + 1, -(k - 1), 0, 0]),
                        LinearForm::ints(&[0, 0, k, ni - k]),
                    ),
                    DeltaFactor::new(
                        LinearForm::ints(&[-(ni - k), k, 0, 0]),
                        LinearForm::ints(&[0, 0, k - 1, ni - k + 1]),
                    ),
                ],
            )
        })
        .collect();
    DeltaSum::new(4, terms)
}

/// Variables `[t1, t2, m1, m2]`: the torsion-point average
/// `(1/n) sum_{k,l} (m2/m1)^l delta(e((k - l tau)/n) t1, m1^n) delta(e((l tau - k)/n) t2, m2^n)`.
pub fn a_n_torsion_sum(n: usize) -> DeltaSum {
    let ni = n as i64;
    let mut terms = Vec::with_capacity(n * n);
    for k in 0..ni {
        for l in 0..ni {
            let shift = LinearForm::zero(4)
                .plus_constant(Ratio::new(k, ni))
                .plus_tau(Ratio::new(-l, ni));
            terms.push(
                DeltaTerm::new(
                    4,
                    vec![
                        DeltaFactor::new(
                            LinearForm::ints(&[1, 0, 0, 0]).add(&shift),
                            LinearForm::ints(&[0, 0, ni, 0]),
                        ),
                        DeltaFactor::new(
                            LinearForm::ints(&[0, 1, 0, 0]).add(&shift.neg()),
                            LinearForm::ints(&[0, 0, 0, ni]),
                        ),
                    ],
                )
                .with_coeff(Ratio::new(1, ni))
                .with_phase(LinearForm::ints(&[0, 0, -l, l])),
            );
        }
    }
    DeltaSum::new(4, terms)
}

/// Blow-up of `C^n` at the origin with `D_X = sum a_i {z_i = 0}`.
pub fn blowup(n: usize, a: &[Ratio]) -> Result<ResolutionModel> {
    require(n >= 1, || format!("blow-up needs n >= 1, got {n}"))?;
    require(a.len() == n, || {
        format!("expected {n} divisor coefficients, got {}", a.len())
    })?;
    let total = a.iter().fold(Ratio::zero(), |acc, x| &acc + x);
    let exceptional = &(&total - &Ratio::int(n as i64)) + &Ratio::int(1);
    let fixed_points = (0..n)
        .map(|i| {
            let mut weights = vec![Weight::unit(n, i)];
            let mut exponents = vec![exceptional.clone()];
            for j in (0..n).filter(|&j| j != i) {
                let mut w = vec![0; n];
                w[j] = 1;
                w[i] = -1;
                weights.push(Weight(w));
                exponents.push(a[j].clone());
            }
            FixedPointDatum { weights, exponents }
        })
        .collect();
    let model = ResolutionModel {
        rank: n,
        dim: n,
        prefactor: Ratio::int(1),
        fixed_points,
        labels: None,
    };
    model.validate()?;
    Ok(model)
}

/// Resolution and orbifold data of `C^m / Z_n`, `Z_n` acting by scalars.
pub fn diagonal_quotient(m: usize, n: usize) -> Result<(ResolutionModel, OrbifoldModel)> {
    require(m >= 1 && n >= 2, || {
        format!("diagonal quotient needs m >= 1, n >= 2, got ({m}, {n})")
    })?;
    let (mi, ni) = (m as i64, n as i64);
    let normal_exponent = &Ratio::int(1) - &Ratio::new(mi, ni);
    let fixed_points = (0..m)
        .map(|i| {
            let mut w = vec![0; m];
            w[i] = ni;
            let mut weights = vec![Weight(w)];
            let mut exponents = vec![normal_exponent.clone()];
            for j in (0..m).filter(|&j| j != i) {
                let mut w = vec![0; m];
                w[j] = 1;
                w[i] = -1;
                weights.push(Weight(w));
                exponents.push(Ratio::zero());
            }
            FixedPointDatum { weights, exponents }
        })
        .collect();
    let resolution = ResolutionModel {
        rank: m,
        dim: m,
        prefactor: Ratio::int(1),
        fixed_points,
        labels: None,
    };
    let mut pairs = Vec::with_capacity(n * n);
    for k in 0..ni {
        for l in 0..ni {
            pairs.push(OrbifoldPairDatum {
                lambda: vec![Ratio::new(k, ni); m],
                nu: vec![Ratio::new(l, ni); m],
                weights: (0..m).map(|i| Weight::unit(m, i)).collect(),
                exponents: vec![Ratio::zero(); m],
                multiplicity: 1,
                h_shift: Ratio::zero(),
            });
        }
    }
    let orbifold = OrbifoldModel {
        dim: m,
        group_order: n as u64,
        pairs,
    };
    resolution.validate()?;
    orbifold.validate()?;
    Ok((resolution, orbifold))
}

/// Variables `[t, z]`; `delta(c t + lambda, -z)`.
fn d1(c: i64, lambda: &LinearForm) -> DeltaFactor {
    DeltaFactor::new(
        LinearForm::ints(&[c, 0]).add(lambda),
        LinearForm::ints(&[0, -1]),
    )
}

fn shift2(constant: Ratio, tau: Ratio) -> LinearForm {
    LinearForm::zero(2).plus_constant(constant).plus_tau(tau)
}

/// `Phi(c + d tau) = delta(c + d tau + t, h) delta(-c - d tau + t, h)` over `[t, z]`.
pub fn phi_term(c: Ratio, d: Ratio) -> DeltaTerm {
    let lam = shift2(c, d);
    DeltaTerm::new(2, vec![d1(1, &lam), d1(1, &lam.neg())])
}

/// `3 delta(t^{-2}, h) delta(t^4, h) + (1/2)(Phi(0) + Phi(1/2) + Phi(-tau/2) + Phi(1/2 - tau/2))`.
pub fn d4_resolution() -> DeltaSum {
    let zero = LinearForm::zero(2);
    let mut terms =
        vec![DeltaTerm::new(2, vec![d1(-2, &zero), d1(4, &zero)]).with_coeff(Ratio::int(3))];
    for (c, d) in [(0, 0), (1, 0), (0, -1), (1, -1)] {
        terms.push(phi_term(Ratio::new(c, 2), Ratio::new(d, 2)).with_coeff(Ratio::new(1, 2)));
    }
    DeltaSum::new(2, terms)
}

/// `(1/8)(S_1 + S_{-1} + 6 S_i)` written out term by term.
pub fn d4_orbifold_sums() -> DeltaSum {
    let mut terms = Vec::new();
    let mut push = |c: Ratio, d: Ratio, weight: i64| {
        terms.push(phi_term(c, d).with_coeff(Ratio::new(weight, 8)));
    };
    // S_1
    push(Ratio::zero(), Ratio::zero(), 1);
    push(Ratio::new(-1, 2), Ratio::zero(), 1);
    push(Ratio::new(-1, 4), Ratio::zero(), 6);
    // S_{-1}
    push(Ratio::zero(), Ratio::new(-1, 2), 1);
    push(Ratio::new(1, 2), Ratio::new(-1, 2), 1);
    push(Ratio::new(1, 4), Ratio::new(-1, 2), 6);
    // 6 S_i
    for j in 0..4 {
        push(Ratio::new(j, 4), Ratio::new(-1, 4), 6);
    }
    DeltaSum::new(2, terms)
}

/// Orbifold data of `C^2 / Q_8`, one entry per class of commuting pairs.
pub fn d4_orbifold() -> OrbifoldModel {
    let q = |a: i64, b: i64| vec![Ratio::new(a, 4), Ratio::new(b, 4)];
    // (lambda, nu, multiplicity) in quarters.
    let table: [((i64, i64), (i64, i64), u64); 12] = [
        ((0, 0), (0, 0), 1),
        ((0, 0), (2, 2), 1),
        ((2, 2), (0, 0), 1),
        ((2, 2), (2, 2), 1),
        ((0, 0), (1, 3), 6),
        ((2, 2), (1, 3), 6),
        ((1, 3), (0, 0), 6),
        ((1, 3), (2, 2), 6),
        ((1, 3), (1, 3), 3),
        ((1, 3), (3, 1), 3),
        ((3, 1), (1, 3), 3),
        ((3, 1), (3, 1), 3),
    ];
    let pairs = table
        .iter()
        .map(|&((l1, l2), (n1, n2), multiplicity)| OrbifoldPairDatum {
            lambda: q(l1, l2),
            nu: q(n1, n2),
            weights: vec![Weight::new(&[1]), Weight::new(&[1])],
            exponents: vec![Ratio::zero(), Ratio::zero()],
            multiplicity,
            h_shift: Ratio::zero(),
        })
        .collect();
    OrbifoldModel {
        dim: 2,
        group_order: 8,
        pairs,
    }
}

pub fn d4() -> (DeltaSum, OrbifoldModel) {
    (d4_resolution(), d4_orbifold())
}

/// `delta(t^{-2}, h) delta(t^4, h)` and `(1/8) sum_{k,l<4} (-1)^{(k+1)(l+1)} Phi(k/4 - l tau/4)`.
pub fn d4_remarkable() -> (DeltaSum, DeltaSum) {
    let zero = LinearForm::zero(2);
    let lhs = DeltaSum::single(2, vec![d1(-2, &zero), d1(4, &zero)]);
    let mut terms = Vec::with_capacity(16);
    for k in 0..4 {
        for l in 0..4 {
            let sign = if ((k + 1) * (l + 1)) % 2 == 0 { 1 } else { -1 };
            terms.push(
                phi_term(Ratio::new(k, 4), Ratio::new(-l, 4)).with_coeff(Ratio::new(sign, 8)),
            );
        }
    }
    (lhs, DeltaSum::new(2, terms))
}

/// Variables `[t1, t2, z]`; `delta(c1 t1 + c2 t2, -z)`.
fn d2(c1: i64, c2: i64) -> DeltaFactor {
    DeltaFactor::new(
        LinearForm::ints(&[c1, c2, 0]),
        LinearForm::ints(&[0, 0, -1]),
    )
}

fn product(factors: &[(i64, i64)]) -> DeltaTerm {
    DeltaTerm::new(3, factors.iter().map(|&(a, b)| d2(a, b)).collect())
}

/// Swaps `t1` and `t2` in an expression over `[t1, t2, z]`.
pub fn swap_t(sum: &DeltaSum) -> DeltaSum {
    sum.substitute(&[
        LinearForm::ints(&[0, 1, 0]),
        LinearForm::ints(&[1, 0, 0]),
        LinearForm::ints(&[0, 0, 1]),
    ])
}

/// The three-term fixed-point sum `F(t1, t2)` of the Lehn-Sorger resolution.
pub fn lehn_sorger_f() -> DeltaSum {
    DeltaSum::new(
        3,
        vec![
            product(&[(1, -1), (3, -1), (0, 2), (-2, 2)]),
            product(&[(2, 0), (4, -2), (-1, 1), (-3, 3)]),
            product(&[(3, -3), (2, -2), (-1, 3), (-2, 4)]),
        ],
    )
}

pub fn lehn_sorger_f0() -> DeltaSum {
    DeltaSum::new(
        3,
        vec![
            product(&[(1, -5), (1, -3), (0, 4), (0, 6)]),
            product(&[(2, -4), (1, -1), (0, 2), (-1, 5)]),
        ],
    )
}

/// `F_0(t1, t2) + F_0(t2, t1) + F(t1, t2)`.
pub fn lehn_sorger_resolution() -> DeltaSum {
    let f0 = lehn_sorger_f0();
    let swapped = swap_t(&f0);
    f0.plus(swapped).plus(lehn_sorger_f())
}

/// Eigen-data of the order-24 group acting on `W + W*`, `W = C^2`, grouped by
/// conjugacy class of `h` with class size as multiplicity.
pub fn lehn_sorger_orbifold() -> OrbifoldModel {
    let r = |a: i64, b: i64| Ratio::new(a, b);
    let full: Vec<((Ratio, Ratio), u64)> = vec![
        ((r(0, 1), r(0, 1)), 1),
        ((r(1, 2), r(1, 2)), 1),
        ((r(1, 6), r(1, 2)), 4),
        ((r(1, 3), r(0, 1)), 4),
        ((r(2, 3), r(0, 1)), 4),
        ((r(5, 6), r(1, 2)), 4),
        ((r(1, 4), r(3, 4)), 6),
    ];
    let c6: Vec<(Ratio, Ratio)> = vec![
        (r(0, 1), r(0, 1)),
        (r(1, 6), r(1, 2)),
        (r(1, 3), r(0, 1)),
        (r(1, 2), r(1, 2)),
        (r(2, 3), r(0, 1)),
        (r(5, 6), r(1, 2)),
    ];
    let c4: Vec<(Ratio, Ratio)> = vec![
        (r(0, 1), r(0, 1)),
        (r(1, 4), r(3, 4)),
        (r(1, 2), r(1, 2)),
        (r(3, 4), r(1, 4)),
    ];
    let datum = |lambda: &(Ratio, Ratio), nu: &(Ratio, Ratio), multiplicity: u64| {
        let mirror = |x: &Ratio| (-x).fract_unit();
        OrbifoldPairDatum {
            lambda: vec![
                lambda.0.clone(),
                lambda.1.clone(),
                mirror(&lambda.0),
                mirror(&lambda.1),
            ],
            nu: vec![nu.0.clone(), nu.1.clone(), mirror(&nu.0), mirror(&nu.1)],
            weights: vec![
                Weight::unit(2, 0),
                Weight::unit(2, 0),
                Weight::unit(2, 1),
                Weight::unit(2, 1),
            ],
            exponents: vec![Ratio::zero(); 4],
            multiplicity,
            h_shift: Ratio::zero(),
        }
    };
    let mut pairs = Vec::new();
    for nu in [(r(0, 1), r(0, 1)), (r(1, 2), r(1, 2))] {
        for (lambda, count) in &full {
            pairs.push(datum(lambda, &nu, *count));
        }
    }
    for nu in [
        (r(1, 6), r(1, 2)),
        (r(1, 3), r(0, 1)),
        (r(2, 3), r(0, 1)),
        (r(5, 6), r(1, 2)),
    ] {
        for lambda in &c6 {
            pairs.push(datum(lambda, &nu, 4));
        }
    }
    let nu = (r(1, 4), r(3, 4));
    for lambda in &c4 {
        pairs.push(datum(lambda, &nu, 6));
    }
    OrbifoldModel {
        dim: 4,
        group_order: 24,
        pairs,
    }
}

pub fn lehn_sorger() -> (DeltaSum, OrbifoldModel) {
    (lehn_sorger_resolution(), lehn_sorger_orbifold())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{parse_model, Model};

    #[test]
    fn a1_is_a_smooth_chart() {
        let m = a_n_resolution_with_divisor(1, &Ratio::new(1, 3), &Ratio::new(-1, 2)).unwrap();
        assert_eq!(m.fixed_points.len(), 1);
        let p = &m.fixed_points[0];
        assert_eq!(p.weights, vec![Weight::new(&[1, 0]), Weight::new(&[0, 1])]);
        assert_eq!(p.exponents, vec![Ratio::new(1, 3), Ratio::new(-1, 2)]);
    }

    #[test]
    fn a2_weights() {
        let m = a_n_resolution(2).unwrap();
        assert_eq!(
            m.fixed_points[0].weights,
            vec![Weight::new(&[2, 0]), Weight::new(&[-1, 1])]
        );
        assert_eq!(
            m.fixed_points[1].weights,
            vec![Weight::new(&[1, -1]), Weight::new(&[0, 2])]
        );
        assert!(m
            .fixed_points
            .iter()
            .all(|p| p.exponents.iter().all(Ratio::is_zero)));
    }

    #[test]
    fn a_n_orbifold_is_symplectic() {
        for n in 1..=6 {
            let m = a_n_orbifold(n).unwrap();
            assert_eq!(m.pairs.len(), n * n);
            assert_eq!(m.total_multiplicity(), (n * n) as u64);
            for p in &m.pairs {
                let s = &p.lambda[0] + &p.lambda[1];
                let t = &p.nu[0] + &p.nu[1];
                assert!(s == Ratio::zero() || s == Ratio::int(1));
                assert!(t == Ratio::zero() || t == Ratio::int(1));
            }
            assert!(m.is_symplectic());
        }
    }

    /// Quaternion units as integer 4-vectors `(1, i, j, k)` coefficients.
    fn q8() -> Vec<[i64; 4]> {
        let mut out = Vec::new();
        for axis in 0..4 {
            for sign in [1, -1] {
                let mut q = [0; 4];
                q[axis] = sign;
                out.push(q);
            }
        }
        out
    }

    fn hamilton(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
        [
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
        ]
    }

    #[test]
    fn d4_multiplicity_counts_commuting_pairs_of_q8() {
        let g = q8();
        let commuting = g
            .iter()
            .flat_map(|&a| g.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| hamilton(a, b) == hamilton(b, a))
            .count() as u64;
        let model = d4_orbifold();
        model.validate().unwrap();
        assert_eq!(model.total_multiplicity(), commuting);
        assert!(model.is_symplectic());
    }

    #[test]
    fn d4_resolution_has_the_isolated_term() {
        let res = d4_resolution();
        let zero = LinearForm::zero(2);
        let expected =
            DeltaTerm::new(2, vec![d1(-2, &zero), d1(4, &zero)]).with_coeff(Ratio::int(3));
        assert!(res.terms.contains(&expected));
    }

    #[test]
    fn lehn_sorger_table_counts() {
        let m = lehn_sorger_orbifold();
        m.validate().unwrap();
        assert!(m.is_symplectic());
        let identity_row: u64 = m.pairs[..7].iter().map(|p| p.multiplicity).sum();
        assert_eq!(identity_row, 24);
        assert_eq!(m.total_multiplicity(), 168);
    }

    #[test]
    fn diagonal_quotient_shapes() {
        let (res, orb) = diagonal_quotient(3, 2).unwrap();
        assert_eq!(res.fixed_points.len(), 3);
        assert_eq!(res.fixed_points[0].exponents[0], Ratio::new(-1, 2));
        assert_eq!(orb.pairs.len(), 4);
        assert!(diagonal_quotient(1, 1).is_err());
    }

    #[test]
    fn blowup_exceptional_exponent() {
        let a = [Ratio::new(1, 2), Ratio::new(1, 3)];
        let m = blowup(2, &a).unwrap();
        assert_eq!(m.fixed_points[0].exponents[0], Ratio::new(-1, 6));
        assert_eq!(m.fixed_points[0].exponents[1], Ratio::new(1, 3));
        assert_eq!(m.fixed_points[1].weights[1], Weight::new(&[1, -1]));
    }

    #[test]
    fn presets_round_trip_through_json() {
        let mut models = vec![
            Model::Resolution(a_n_resolution(3).unwrap()),
            Model::Resolution(
                blowup(3, &[Ratio::zero(), Ratio::new(1, 2), Ratio::new(-2, 3)]).unwrap(),
            ),
            Model::Orbifold(a_n_orbifold(4).unwrap()),
            Model::Orbifold(d4_orbifold()),
            Model::Orbifold(lehn_sorger_orbifold()),
        ];
        for (m, n) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
            let (r, o) = diagonal_quotient(m, n).unwrap();
            models.push(Model::Resolution(r));
            models.push(Model::Orbifold(o));
        }
        for model in models {
            let back = parse_model(&model.to_json()).unwrap();
            assert_eq!(back, model);
        }
    }

    #[test]
    fn a2_fixed_point_sum_matches_additive_display() {
        // delta(2t1, m1 + m2) delta(t2 - t1, 2 m2) + delta(t1 - t2, 2 m1) delta(2 t2, m1 + m2)
        let f =
            |a: [i64; 4], b: [i64; 4]| DeltaFactor::new(LinearForm::ints(&a), LinearForm::ints(&b));
        let expected = DeltaSum::new(
            4,
            vec![
                DeltaTerm::new(
                    4,
                    vec![
                        f([2, 0, 0, 0], [0, 0, 1, 1]),
                        f([-1, 1, 0, 0], [0, 0, 0, 2]),
                    ],
                ),
                DeltaTerm::new(
                    4,
                    vec![
                        f([1, -1, 0, 0], [0, 0, 2, 0]),
                        f([0, 2, 0, 0], [0, 0, 1, 1]),
                    ],
                ),
            ],
        );
        assert_eq!(a_n_fixed_point_sum(2), expected);
    }

    #[test]
    fn torsion_sum_shape() {
        for n in 1..=6 {
            let s = a_n_torsion_sum(n);
            assert_eq!(s.terms.len(), n * n);
            let total = s.terms.iter().fold(Ratio::zero(), |acc, t| &acc + &t.coeff);
            assert_eq!(total, Ratio::int(n as i64));
        }
        assert_eq!(a_n_torsion_sum(1), a_n_fixed_point_sum(1));
    }
}
