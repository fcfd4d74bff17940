//! The built-in identities.
//!
//! Multiplicative variables are written additively throughout: `t = e(v)`,
//! and `h = e(-z)` for the dynamical variable `z` unless an entry says
//! otherwise.

use rug::{Complex, Rational};

use super::{model_identity, ExactMode, IdentityDescriptor, Side, Variable};
use crate::error::{Error, Result};
use crate::evaluator::{
    hirzebruch_limit_forms, hirzebruch_limit_forms_exact, orbifold_class,
    orbifold_class_symplectic, trig_identity, trig_identity_exact, TorusPoint,
};
use crate::models::presets;
use crate::models::{DeltaFactor, DeltaSum, DeltaTerm, LinearForm, Model, Ratio};
use crate::series::{
    cy_residue_check, cy_specialization_chain, ell_genus_p1, ell_genus_p1_closed_form,
};
use crate::theta::ThetaContext;

const HIRZEBRUCH_N: usize = 3;
const TRIG_N: usize = 4;
const SIMPLIFIED_N: usize = 3;
const SELFDUAL_N: usize = 3;

fn lin(nvars: usize, terms: &[(usize, i64)]) -> LinearForm {
    let mut coeffs = vec![0; nvars];
    for &(i, c) in terms {
        coeffs[i] += c;
    }
    LinearForm::ints(&coeffs)
}

fn torsion(nvars: usize, k: i64, l: i64, n: i64) -> LinearForm {
    LinearForm::zero(nvars)
        .plus_constant(Ratio::new(k, n))
        .plus_tau(Ratio::new(-l, n))
}

fn sums(
    id: &str,
    description: &str,
    variables: Vec<Variable>,
    lhs: DeltaSum,
    rhs: DeltaSum,
) -> IdentityDescriptor {
    IdentityDescriptor::new(id, description, variables, Side::Sum(lhs), Side::Sum(rhs))
}

fn indexed(prefix: &str, range: std::ops::RangeInclusive<usize>, torus: bool) -> Vec<Variable> {
    range
        .map(|i| {
            let name = format!("{prefix}{i}");
            if torus {
                Variable::torus(name)
            } else {
                Variable::dynamical(name)
            }
        })
        .collect()
}

fn theta_quasiperiod() -> IdentityDescriptor {
    IdentityDescriptor::new(
        "theta.quasiperiod",
        "theta(v + 1 + tau) = e(-tau/2 - v) theta(v), unreduced series",
        vec![Variable::torus("v")],
        Side::function(|ctx, x| {
            let shifted = Complex::with_val(ctx.bits(), &x[0] + ctx.tau()) + 1u32;
            Ok(ctx.theta_series_direct(&shifted))
        }),
        Side::function(|ctx, x| {
            let bits = ctx.bits();
            let expo = -(Complex::with_val(bits, ctx.tau() / 2u32) + &x[0]);
            Ok(ctx.e(&expo)? * ctx.theta_series_direct(&x[0]))
        }),
    )
}

fn delta_quasiperiod() -> IdentityDescriptor {
    IdentityDescriptor::new(
        "delta.quasiperiod",
        "delta(a + 1 + tau, b) = e(-b) delta(a, b), unreduced series",
        vec![Variable::torus("a"), Variable::dynamical("b")],
        Side::function(|ctx, x| {
            let shifted = Complex::with_val(ctx.bits(), &x[0] + ctx.tau()) + 1u32;
            ctx.delta_direct(&shifted, &x[1])
        }),
        Side::function(|ctx, x| {
            let phase = ctx.e(&Complex::with_val(ctx.bits(), -&x[1]))?;
            Ok(phase * ctx.delta_direct(&x[0], &x[1])?)
        }),
    )
}

/// `prod_i delta(t_i, m_i) = sum_i delta(t_i, m_1 + ... + m_n) prod_{j != i} delta(t_j - t_i, m_j)`
/// over `[t_1..t_n, m_1..m_n]`.
fn fay(n: usize) -> IdentityDescriptor {
    let nv = 2 * n;
    let lhs = DeltaSum::single(
        nv,
        (0..n)
            .map(|i| DeltaFactor::new(lin(nv, &[(i, 1)]), lin(nv, &[(n + i, 1)])))
            .collect(),
    );
    let all_m: Vec<(usize, i64)> = (0..n).map(|j| (n + j, 1)).collect();
    let terms =
        (0..n)
            .map(|i| {
                let mut factors = vec![DeltaFactor::new(lin(nv, &[(i, 1)]), lin(nv, &all_m))];
                factors.extend((0..n).filter(|&j| j != i).map(|j| {
                    DeltaFactor::new(lin(nv, &[(j, 1), (i, -1)]), lin(nv, &[(n + j, 1)]))
                }));
                DeltaTerm::new(nv, factors)
            })
            .collect();
    let mut vars = indexed("t", 1..=n, true);
    vars.extend(indexed("m", 1..=n, false));
    sums(
        &format!("fay.n{n}"),
        "Fay identity for the blow-up of C^n",
        vars,
        lhs,
        DeltaSum::new(nv, terms),
    )
}

/// `sum_{i=0}^n prod_{j != i} delta(x_j - x_i, xi_j - xi_{j-1}) = 0`, `xi_{-1} = xi_n`,
/// stated as `T_0 = -(T_1 + ... + T_n)`.
fn fay_symmetric(n: usize) -> IdentityDescriptor {
    let m = n + 1;
    let nv = 2 * m;
    let term = |i: usize| {
        let factors = (0..m)
            .filter(|&j| j != i)
            .map(|j| {
                let prev = (j + m - 1) % m;
                DeltaFactor::new(
                    lin(nv, &[(j, 1), (i, -1)]),
                    lin(nv, &[(m + j, 1), (m + prev, -1)]),
                )
            })
            .collect();
        DeltaTerm::new(nv, factors)
    };
    let lhs = DeltaSum::new(nv, vec![term(0)]);
    let rhs = DeltaSum::new(nv, (1..m).map(term).collect()).scale(&Ratio::int(-1));
    let mut vars = indexed("x", 0..=n, true);
    vars.extend(indexed("xi", 0..=n, false));
    sums(
        &format!("fay.symmetric.n{n}"),
        "symmetric form of the Fay identity",
        vars,
        lhs,
        rhs,
    )
}

fn trisecant() -> IdentityDescriptor {
    fn pair(ctx: &ThetaContext, x: &Complex, y: &Complex) -> Complex {
        let bits = ctx.bits();
        ctx.theta(&Complex::with_val(bits, x + y)) * ctx.theta(&Complex::with_val(bits, x - y))
    }
    IdentityDescriptor::new(
        "trisecant.additive",
        "theta(a+c)theta(a-c)theta(b+d)theta(b-d) = theta(a+b)theta(a-b)theta(c+d)theta(c-d) + theta(a+d)theta(a-d)theta(b+c)theta(b-c)",
        ["a", "b", "c", "d"].into_iter().map(Variable::torus).collect(),
        Side::function(|ctx, x| Ok(pair(ctx, &x[0], &x[2]) * pair(ctx, &x[1], &x[3]))),
        Side::function(|ctx, x| {
            Ok(pair(ctx, &x[0], &x[1]) * pair(ctx, &x[2], &x[3]) + pair(ctx, &x[0], &x[3]) * pair(ctx, &x[1], &x[2]))
        }),
    )
}

/// Two resolutions of `z31 (z31 - z21 z32) = 0`; variables `[x1, x2, x3, u1, u2, u3, z]`.
fn braid() -> IdentityDescriptor {
    let nv = 7;
    let x = |a: usize, b: usize| lin(nv, &[(a, 1), (b, -1)]);
    let u = |a: usize, b: usize| lin(nv, &[(3 + a, 1), (3 + b, -1)]);
    let h = lin(nv, &[(6, -1)]);
    let f = DeltaFactor::new;
    let lhs = DeltaSum::new(
        nv,
        vec![
            DeltaTerm::new(
                nv,
                vec![
                    f(x(1, 0), u(2, 1)),
                    f(x(2, 1), u(2, 0)),
                    f(x(1, 0), u(1, 0)),
                ],
            ),
            DeltaTerm::new(
                nv,
                vec![
                    f(x(0, 1), h.clone()),
                    f(x(2, 0), u(2, 0)),
                    f(x(1, 0), h.clone()),
                ],
            ),
        ],
    );
    let rhs = DeltaSum::new(
        nv,
        vec![
            DeltaTerm::new(
                nv,
                vec![
                    f(x(2, 1), u(1, 0)),
                    f(x(1, 0), u(2, 0)),
                    f(x(2, 1), u(2, 1)),
                ],
            ),
            DeltaTerm::new(
                nv,
                vec![f(x(1, 2), h.clone()), f(x(2, 0), u(2, 0)), f(x(2, 1), h)],
            ),
        ],
    );
    let mut vars = indexed("x", 1..=3, true);
    vars.extend(indexed("u", 1..=3, false));
    vars.push(Variable::dynamical("z"));
    sums(
        "braid.sl3",
        "s1 s2 s1 and s2 s1 s2 resolutions",
        vars,
        lhs,
        rhs,
    )
}

fn an_vars() -> Vec<Variable> {
    vec![
        Variable::torus("t1"),
        Variable::torus("t2"),
        Variable::dynamical("m1"),
        Variable::dynamical("m2"),
    ]
}

fn an_mckay(n: usize) -> IdentityDescriptor {
    sums(
        &format!("an.mckay.n{n}"),
        "A_{n-1}: fixed-point sum over the resolution equals the torsion-point average",
        an_vars(),
        presets::a_n_fixed_point_sum(n),
        presets::a_n_torsion_sum(n),
    )
}

/// `n delta(n x, z) delta(-n x, z) = (1/n) sum_{k,l} delta((k - l tau)/n + x, z) delta((l tau - k)/n - x, z)`
/// over `[x, z]`, `z` entering the second slot directly.
fn an_simplified() -> IdentityDescriptor {
    let n = SIMPLIFIED_N as i64;
    let z = lin(2, &[(1, 1)]);
    let lhs = DeltaSum::new(
        2,
        vec![DeltaTerm::new(
            2,
            vec![
                DeltaFactor::new(lin(2, &[(0, n)]), z.clone()),
                DeltaFactor::new(lin(2, &[(0, -n)]), z.clone()),
            ],
        )
        .with_coeff(Ratio::int(n))],
    );
    let mut terms = Vec::new();
    for k in 0..n {
        for l in 0..n {
            let s = torsion(2, k, l, n);
            terms.push(
                DeltaTerm::new(
                    2,
                    vec![
                        DeltaFactor::new(lin(2, &[(0, 1)]).add(&s), z.clone()),
                        DeltaFactor::new(lin(2, &[(0, -1)]).add(&s.neg()), z.clone()),
                    ],
                )
                .with_coeff(Ratio::new(1, n)),
            );
        }
    }
    sums(
        "an.simplified",
        "A_2 specialization t1 = 1/t2, m1 = m2",
        vec![Variable::torus("x"), Variable::dynamical("z")],
        lhs,
        DeltaSum::new(2, terms),
    )
}

/// `A_n(m1, 1/m2, t1, 1/t2) = -A_n(t1, t2, m1, m2)`.
fn an_selfdual() -> IdentityDescriptor {
    let a = presets::a_n_fixed_point_sum(SELFDUAL_N);
    let images = [
        lin(4, &[(2, 1)]),
        lin(4, &[(3, -1)]),
        lin(4, &[(0, 1)]),
        lin(4, &[(1, -1)]),
    ];
    sums(
        "an.selfdual",
        "exchanging equivariant and dynamical variables flips the sign of the A_2 fixed-point sum",
        an_vars(),
        a.substitute(&images),
        a.scale(&Ratio::int(-1)),
    )
}

/// The torsion-point average rewritten through self-duality, with weights `(t1 t2)^{-l}`.
fn an_selfdual_corollary() -> IdentityDescriptor {
    let n = SELFDUAL_N as i64;
    let mut terms = Vec::new();
    for k in 0..n {
        for l in 0..n {
            let s = torsion(4, k, l, n);
            terms.push(
                DeltaTerm::new(
                    4,
                    vec![
                        DeltaFactor::new(lin(4, &[(2, 1)]).add(&s), lin(4, &[(0, n)])),
                        DeltaFactor::new(lin(4, &[(3, -1)]).add(&s.neg()), lin(4, &[(1, -n)])),
                    ],
                )
                .with_coeff(Ratio::int(-1))
                .with_phase(lin(4, &[(0, -l), (1, -l)])),
            );
        }
    }
    sums(
        "an.selfdual.corollary",
        "torsion-point average against its dual with (t1 t2)^{-l} weights",
        an_vars(),
        presets::a_n_torsion_sum(SELFDUAL_N).scale(&Ratio::int(n)),
        DeltaSum::new(4, terms),
    )
}

fn tz_vars() -> Vec<Variable> {
    vec![Variable::torus("t"), Variable::dynamical("z")]
}

fn t1t2z_vars() -> Vec<Variable> {
    vec![
        Variable::torus("t1"),
        Variable::torus("t2"),
        Variable::dynamical("z"),
    ]
}

fn orbifold_side(model: crate::models::OrbifoldModel) -> Side {
    Side::function(move |ctx, x| {
        let (z, t) = x.split_last().expect("z is the last variable");
        orbifold_class(ctx, &model, &TorusPoint::new(t.to_vec(), z.clone()))
    })
}

fn d4_entries() -> Vec<IdentityDescriptor> {
    let (res, orb) = presets::d4();
    let (lhs, rhs) = presets::d4_remarkable();
    let sums_side = presets::d4_orbifold_sums();
    vec![
        sums(
            "d4.mckay",
            "binary dihedral quotient: resolution with the P^1 trick against (1/8)(S_1 + S_-1 + 6 S_i)",
            tz_vars(),
            res,
            sums_side.clone(),
        ),
        IdentityDescriptor::new(
            "d4.orbifold",
            "(1/8)(S_1 + S_-1 + 6 S_i) against the orbifold class of the commuting-pair table",
            tz_vars(),
            Side::Sum(sums_side),
            orbifold_side(orb),
        ),
        sums("d4.remarkable", "delta(t^-2, h) delta(t^4, h) as a signed sum of Phi", tz_vars(), lhs, rhs),
    ]
}

fn lehn_sorger_entries() -> Vec<IdentityDescriptor> {
    let (res, orb) = presets::lehn_sorger();
    let f = presets::lehn_sorger_f();
    let sym = orb.clone();
    let mirror = orb.clone();
    let direct = orb.clone();
    vec![
        sums(
            "lehnsorger.fsym",
            "F(t1, t2) = F(t2, t1)",
            t1t2z_vars(),
            f.clone(),
            presets::swap_t(&f),
        ),
        IdentityDescriptor::new(
            "lehnsorger.mckay",
            "Lehn-Sorger resolution against the orbifold class of the order-24 group",
            t1t2z_vars(),
            Side::Sum(res),
            orbifold_side(orb),
        ),
        IdentityDescriptor::new(
            "lehnsorger.symplectic",
            "general and paired evaluation of the Lehn-Sorger orbifold class",
            t1t2z_vars(),
            orbifold_side(direct),
            Side::function(move |ctx, x| {
                orbifold_class_symplectic(
                    ctx,
                    &sym,
                    &TorusPoint::new(x[..2].to_vec(), x[2].clone()),
                )
            }),
        ),
        IdentityDescriptor::new(
            "lehnsorger.wwstar.symmetry",
            "orbifold class at (t1, t2, h) equals the value at (1/t2, 1/t1, 1/h)",
            t1t2z_vars(),
            orbifold_side(mirror.clone()),
            Side::function(move |ctx, x| {
                let p = TorusPoint::new(vec![-x[1].clone(), -x[0].clone()], -x[2].clone());
                orbifold_class(ctx, &mirror, &p)
            }),
        ),
    ]
}

fn diagonal(m: usize, n: usize) -> Result<IdentityDescriptor> {
    let (res, orb) = presets::diagonal_quotient(m, n)?;
    let mut id = model_identity(
        format!("diag.mckay.m{m}.n{n}"),
        &Model::Resolution(res),
        &Model::Orbifold(orb),
    )?;
    id.description = format!("C^{m}/Z_{n}: blow-up localization against the orbifold class");
    Ok(id)
}

fn rationals(points: &[&[(i64, i64)]]) -> Vec<Vec<Rational>> {
    points
        .iter()
        .map(|p| p.iter().map(|&r| Rational::from(r)).collect())
        .collect()
}

fn hirzebruch_exact() -> ExactMode {
    ExactMode {
        points: rationals(&[
            &[(2, 3), (-7, 5), (3, 11)],
            &[(5, 2), (1, 3), (-4, 7)],
            &[(-3, 2), (7, 4), (2, 5)],
            &[(9, 5), (-2, 9), (7, 3)],
            &[(4, 3), (5, 7), (-1, 6)],
        ]),
        eval: std::sync::Arc::new(|p| {
            Ok(hirzebruch_limit_forms_exact(HIRZEBRUCH_N, &p[0], &p[1], &p[2])?.to_vec())
        }),
    }
}

fn exponentials(ctx: &ThetaContext, x: &[Complex]) -> Result<Vec<Complex>> {
    x.iter().map(|v| ctx.e(v)).collect()
}

fn hirzebruch_form(index: usize) -> Side {
    Side::function(move |ctx, x| {
        let m = exponentials(ctx, x)?;
        let forms = hirzebruch_limit_forms(HIRZEBRUCH_N, &m[0], &m[1], &m[2])?;
        Ok(forms[index].clone())
    })
}

fn limit_entries() -> Vec<IdentityDescriptor> {
    let vars = vec![
        Variable::torus("a1"),
        Variable::torus("a2"),
        Variable::dynamical("z"),
    ];
    let trig_points = rationals(&[
        &[(1, 2), (-3, 4)],
        &[(2, 5), (1, 3)],
        &[(3, 1), (2, 7)],
        &[(-1, 3), (5, 2)],
        &[(5, 4), (-1, 5)],
    ]);
    let y0_points = rationals(&[&[(1, 2)], &[(2, 5)], &[(3, 1)], &[(-1, 3)], &[(5, 4)]]);
    let trig_side = |index: usize| {
        Side::function(move |ctx, x| {
            let m = exponentials(ctx, x)?;
            let (l, r) = trig_identity(TRIG_N, &m[0], &m[1])?;
            Ok(if index == 0 { l } else { r })
        })
    };
    let y0_side = |index: usize| {
        Side::function(move |ctx, x| {
            let t = ctx.e(&x[0])?;
            let (l, r) = trig_identity(2, &t, &ctx.complex(0.0, 0.0))?;
            Ok(if index == 0 { l } else { r })
        })
    };
    vec![
        IdentityDescriptor::new(
            "limit.hirzebruch",
            "q -> 0 limit of A_2: fixed-point form (*) against the root-of-unity average (**); t_i = e(a_i), y = e(z)",
            vars.clone(),
            hirzebruch_form(0),
            hirzebruch_form(1),
        )
        .with_exact(hirzebruch_exact()),
        IdentityDescriptor::new(
            "limit.hirzebruch.closed",
            "q -> 0 limit of A_2: fixed-point form (*) against the product closed form (***)",
            vars,
            hirzebruch_form(0),
            hirzebruch_form(2),
        )
        .with_exact(hirzebruch_exact()),
        IdentityDescriptor::new(
            "limit.trig",
            "trigonometric identity at n = 4; T = e(v), y = e(z)",
            vec![Variable::torus("v"), Variable::dynamical("z")],
            trig_side(0),
            trig_side(1),
        )
        .with_exact(ExactMode {
            points: trig_points,
            eval: std::sync::Arc::new(|p| {
                let (l, r) = trig_identity_exact(TRIG_N, &p[0], &p[1])?;
                Ok(vec![l, r])
            }),
        }),
        IdentityDescriptor::new(
            "limit.trig.y0",
            "trigonometric identity at n = 2, y = 0; T = e(v)",
            vec![Variable::torus("v")],
            y0_side(0),
            y0_side(1),
        )
        .with_exact(ExactMode {
            points: y0_points,
            eval: std::sync::Arc::new(|p| {
                let (l, r) = trig_identity_exact(2, &p[0], &Rational::new())?;
                Ok(vec![l, r])
            }),
        }),
    ]
}

fn neg(ctx: &ThetaContext, z: &Complex) -> Complex {
    Complex::with_val(ctx.bits(), -z)
}

fn ell_p1() -> IdentityDescriptor {
    IdentityDescriptor::new(
        "ell.p1",
        "Ell(P^1): constant term of delta(t, h) + delta(1/t, h) at t = 1 against 2 h theta'(h) / theta(h)",
        vec![Variable::dynamical("z")],
        Side::function(|ctx, x| ell_genus_p1(ctx, &neg(ctx, &x[0]))),
        Side::function(|ctx, x| ell_genus_p1_closed_form(ctx, &neg(ctx, &x[0]))),
    )
}

fn cy_residue(n: usize) -> IdentityDescriptor {
    let side = move |index: usize| {
        Side::function(move |ctx, x| {
            let (by_x, by_u) = cy_residue_check(ctx, n, &x[0], &neg(ctx, &x[1]))?;
            Ok(if index == 0 { by_x } else { by_u })
        })
    };
    IdentityDescriptor::new(
        format!("cy.residue.n{n}"),
        "residue at u = 1 of delta(t/u, h) delta(u, h)^n / u by coefficient extraction in log u and in u - 1",
        tz_vars(),
        side(0),
        side(1),
    )
}

fn cy_chain(n: usize) -> IdentityDescriptor {
    let side = move |index: usize| {
        Side::function(move |ctx, x| {
            let (before, after) = cy_specialization_chain(ctx, n, &neg(ctx, &x[0]))?;
            Ok(if index == 0 { before } else { after })
        })
    };
    IdentityDescriptor::new(
        format!("cy.chain.n{n}"),
        "specialization t = h^{-1/n} of the degree-n hypersurface integrand",
        vec![Variable::dynamical("z")],
        side(0),
        side(1),
    )
}

/// All built-in identities, in a fixed order.
pub fn catalog() -> Vec<IdentityDescriptor> {
    let mut out = vec![theta_quasiperiod(), delta_quasiperiod()];
    out.extend((2..=5).map(fay));
    out.extend((2..=5).map(fay_symmetric));
    out.push(trisecant());
    out.push(braid());
    out.extend((1..=6).map(an_mckay));
    out.push(an_simplified());
    out.push(an_selfdual());
    out.push(an_selfdual_corollary());
    out.extend(d4_entries());
    out.extend(lehn_sorger_entries());
    for m in 1..=3 {
        for n in 2..=3 {
            out.push(diagonal(m, n).expect("diagonal presets are valid"));
        }
    }
    out.extend(limit_entries());
    out.push(ell_p1());
    out.extend((2..=5).map(cy_residue));
    // n = 3 is the elliptic curve, where both ends vanish identically.
    out.extend([2, 4, 5].into_iter().map(cy_chain));
    out
}

pub fn find(id: &str) -> Result<IdentityDescriptor> {
    catalog()
        .into_iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}
