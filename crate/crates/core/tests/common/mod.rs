//! Independent oracles. Nothing here calls the cochain, deform or operators
//! modules: tables are typed in by hand and elimination is done over `Rational64`.
#![allow(dead_code)]

use num_rational::Rational64 as Q;
use num_traits::{One, Zero};

pub const DIM: usize = 3;
pub const DEG: [u8; DIM] = [0, 1, 1];

/// `x = 0, y1 = 1, y2 = 2`; `xx = 2x, xy1 = y1, xy2 = y2, y1y2 = x, y2y1 = -x`.
pub fn ex37_product(a: usize, b: usize) -> [Q; DIM] {
    let mut v = [Q::zero(); DIM];
    match (a, b) {
        (0, 0) => v[0] = Q::from(2),
        (0, 1) => v[1] = Q::one(),
        (0, 2) => v[2] = Q::one(),
        (1, 2) => v[0] = Q::one(),
        (2, 1) => v[0] = Q::from(-1),
        _ => {}
    }
    v
}

pub fn ex37_eps(a: usize, b: usize) -> Q {
    if DEG[a] == 1 && DEG[b] == 1 {
        Q::from(-1)
    } else {
        Q::one()
    }
}

/// Dense bilinear map `f[a][b]` in `A`.
pub type Bilinear = [[[Q; DIM]; DIM]; DIM];

fn mul_vec(u: &[Q; DIM], w: &[Q; DIM]) -> [Q; DIM] {
    let mut out = [Q::zero(); DIM];
    for a in 0..DIM {
        for b in 0..DIM {
            let c = u[a] * w[b];
            if c.is_zero() {
                continue;
            }
            let p = ex37_product(a, b);
            for k in 0..DIM {
                out[k] += c * p[k];
            }
        }
    }
    out
}

fn apply_bilinear(f: &Bilinear, u: &[Q; DIM], w: &[Q; DIM]) -> [Q; DIM] {
    let mut out = [Q::zero(); DIM];
    for a in 0..DIM {
        for b in 0..DIM {
            let c = u[a] * w[b];
            for k in 0..DIM {
                out[k] += c * f[a][b][k];
            }
        }
    }
    out
}

fn unit(i: usize) -> [Q; DIM] {
    let mut v = [Q::zero(); DIM];
    v[i] = Q::one();
    v
}

fn add(u: [Q; DIM], w: [Q; DIM]) -> [Q; DIM] {
    std::array::from_fn(|k| u[k] + w[k])
}

fn sub(u: [Q; DIM], w: [Q; DIM]) -> [Q; DIM] {
    std::array::from_fn(|k| u[k] - w[k])
}

fn scale(c: Q, u: [Q; DIM]) -> [Q; DIM] {
    std::array::from_fn(|k| c * u[k])
}

/// Linearization of the left-symmetric identity at the base product:
/// `f(a,b)c + f(ab,c) - f(a,bc) - a f(b,c) - ε(a,b)[same with a,b swapped]`.
pub fn linearized_identity(f: &Bilinear) -> Vec<Q> {
    let mut out = Vec::with_capacity(DIM * DIM * DIM * DIM);
    for a in 0..DIM {
        for b in 0..DIM {
            for c in 0..DIM {
                let half = |a: usize, b: usize| {
                    let t1 = mul_vec(&f[a][b], &unit(c));
                    let t2 = apply_bilinear(f, &ex37_product(a, b), &unit(c));
                    let t3 = apply_bilinear(f, &unit(a), &ex37_product(b, c));
                    let t4 = mul_vec(&unit(a), &f[b][c]);
                    sub(add(t1, t2), add(t3, t4))
                };
                let r = sub(half(a, b), scale(ex37_eps(a, b), half(b, a)));
                out.extend_from_slice(&r);
            }
        }
    }
    out
}

/// Quadratic part `f(f(a,b),c) - f(a,f(b,c)) - ε(a,b)[swapped]`.
pub fn self_star(f: &Bilinear) -> Vec<Q> {
    let mut out = Vec::new();
    for a in 0..DIM {
        for b in 0..DIM {
            for c in 0..DIM {
                let half = |a: usize, b: usize| {
                    sub(
                        apply_bilinear(f, &f[a][b], &unit(c)),
                        apply_bilinear(f, &unit(a), &f[b][c]),
                    )
                };
                out.extend_from_slice(&sub(half(a, b), scale(ex37_eps(a, b), half(b, a))));
            }
        }
    }
    out
}

/// All degree-0 bilinear maps on one basis slot each: `f(a,b) = e_k` with
/// `|k| = |a| + |b|`.
pub fn degree0_bilinear_basis() -> Vec<Bilinear> {
    let mut out = Vec::new();
    for a in 0..DIM {
        for b in 0..DIM {
            for k in 0..DIM {
                if (DEG[a] + DEG[b]) % 2 == DEG[k] {
                    let mut f = [[[Q::zero(); DIM]; DIM]; DIM];
                    f[a][b][k] = Q::one();
                    out.push(f);
                }
            }
        }
    }
    out
}

/// All degree-0 linear maps `e_j -> e_i` with `|i| = |j|`, as matrices `q[i][j]`.
pub fn degree0_linear_basis() -> Vec<[[Q; DIM]; DIM]> {
    let mut out = Vec::new();
    for i in 0..DIM {
        for j in 0..DIM {
            if DEG[i] == DEG[j] {
                let mut q = [[Q::zero(); DIM]; DIM];
                q[i][j] = Q::one();
                out.push(q);
            }
        }
    }
    out
}

fn apply_linear(q: &[[Q; DIM]; DIM], v: &[Q; DIM]) -> [Q; DIM] {
    std::array::from_fn(|i| (0..DIM).map(|j| q[i][j] * v[j]).sum())
}

/// The infinitesimal change of the product under `id + λq`:
/// `(a,b) ↦ q(a)b + a q(b) - q(ab)`.
pub fn product_variation(q: &[[Q; DIM]; DIM]) -> Bilinear {
    let mut f = [[[Q::zero(); DIM]; DIM]; DIM];
    for a in 0..DIM {
        for b in 0..DIM {
            let t1 = mul_vec(&apply_linear(q, &unit(a)), &unit(b));
            let t2 = mul_vec(&unit(a), &apply_linear(q, &unit(b)));
            let t3 = apply_linear(q, &ex37_product(a, b));
            f[a][b] = sub(add(t1, t2), t3);
        }
    }
    f
}

/// Second-order term of the transport of the trivial deformation by `id + λq`:
/// `e2(a,b) = q(a)q(b) - q(e1(a,b))` with `e1` the product variation.
pub fn second_order_transport(q: &[[Q; DIM]; DIM]) -> Bilinear {
    let e1 = product_variation(q);
    let mut f = [[[Q::zero(); DIM]; DIM]; DIM];
    for a in 0..DIM {
        for b in 0..DIM {
            let t1 = mul_vec(&apply_linear(q, &unit(a)), &apply_linear(q, &unit(b)));
            f[a][b] = sub(t1, apply_linear(q, &e1[a][b]));
        }
    }
    f
}

/// The bilinear map of the three-parameter family `f(x,x) = rx`, `f(x,y1) = sy2`,
/// `f(x,y2) = ty1 + ry2`.
pub fn three_parameter_family(r: Q, s: Q, t: Q) -> Bilinear {
    let mut f = [[[Q::zero(); DIM]; DIM]; DIM];
    f[0][0][0] = r;
    f[0][1][2] = s;
    f[0][2][1] = t;
    f[0][2][2] = r;
    f
}

pub fn flatten(f: &Bilinear) -> Vec<Q> {
    f.iter().flatten().flatten().copied().collect()
}

/// Rank by fraction Gaussian elimination on the given columns.
pub fn rank(columns: &[Vec<Q>]) -> usize {
    let Some(first) = columns.first() else {
        return 0;
    };
    let rows = first.len();
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect();
    let cols = columns.len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col] / pivot;
                for c in col..cols {
                    let v = m[rank][c];
                    m[r][c] -= factor * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ex37Dims {
    pub cochains: usize,
    pub hom0: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

/// Degree-0 second cohomology of example37 by full enumeration.
pub fn ex37_degree0_dims() -> Ex37Dims {
    let c2 = degree0_bilinear_basis();
    let identity_columns: Vec<Vec<Q>> = c2.iter().map(linearized_identity).collect();
    let cocycles = c2.len() - rank(&identity_columns);
    let hom0 = degree0_linear_basis();
    let variations: Vec<Vec<Q>> = hom0
        .iter()
        .map(|q| flatten(&product_variation(q)))
        .collect();
    let coboundaries = rank(&variations);
    Ex37Dims {
        cochains: c2.len(),
        hom0: hom0.len(),
        cocycles,
        coboundaries,
        cohomology: cocycles - coboundaries,
    }
}

/// `A_α` closed forms at `(x,x)` for `P = diag(r, w)`: the Nijenhuis residual is
/// `(r-w)² α y`, the weight-λ Rota–Baxter residual `(r² - 2rw - λw) α y`.
pub fn a_alpha_nijenhuis_xx(r: Q, w: Q, alpha: Q) -> Q {
    (r - w) * (r - w) * alpha
}

pub fn a_alpha_rota_baxter_xx(r: Q, w: Q, lambda: Q, alpha: Q) -> Q {
    (r * r - Q::from(2) * r * w - lambda * w) * alpha
}
