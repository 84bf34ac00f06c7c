use std::sync::Arc;

use qgroup_core::arrangement::{
    facets, sign_face, sign_rho, ConfigArrangement, Ext, Flavor, FullArrangement, OnePoint, PosFacet, RhoSign,
};
use qgroup_core::cyclotomic::{CycField, CycNum};
use qgroup_core::freealg::FreeAlg;
use qgroup_core::hochschild::{Hochschild, Side};
use qgroup_core::linalg::{cohomology_dims, image_complex, CycMatrix};
use qgroup_core::rootdata::{CartanDatum, RootVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(name: &str, l: u64) -> (CartanDatum, Arc<CycField>) {
    let c = CartanDatum::preset(name).unwrap();
    let f = CycField::new(l, 1, c.varpi()).unwrap();
    (c, f)
}

fn principal(name: &str, pi: Vec<usize>, lam: Vec<i64>) -> ConfigArrangement {
    let (c, f) = setup(name, 5);
    ConfigArrangement::new(f, &c, pi, lam, Flavor::Principal).unwrap()
}

fn unfoldings(rank: usize, n: usize) -> Vec<Vec<usize>> {
    // nondecreasing color sequences
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            let lo = p.last().copied().unwrap_or(0);
            for c in lo..rank {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn rational_det(mut m: Vec<Vec<f64>>) -> f64 {
    // entries are small integers or halves, partial pivoting is exact enough for the sign
    let n = m.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().partial_cmp(&m[b][c].abs()).unwrap()).unwrap();
        if m[p][c].abs() < 1e-9 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let k = m[r][c] / m[c][c];
            for j in c..n {
                m[r][j] -= k * m[c][j];
            }
        }
    }
    d
}

// functionals orienting the dual cell of a positive facet, listed in tau order:
// e_j - e_{m(j)} with m(j) the tau-first element of its block, or e_j in block 0
fn functionals(rho: &PosFacet, tau: &[usize]) -> Vec<Vec<f64>> {
    let n = tau.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| tau[j]);
    let mut rows = Vec::new();
    for &j in &order {
        let a = rho.rho[j];
        let mut v = vec![0.0; n];
        v[j] = 1.0;
        if a > 0 {
            let m = *order.iter().find(|&&k| rho.rho[k] == a).unwrap();
            if m == j {
                continue;
            }
            v[m] = -1.0;
        }
        rows.push(v);
    }
    rows
}

fn dual_vectors(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    // columns of A^T (A A^T)^{-1}
    let k = rows.len();
    if k == 0 {
        return vec![];
    }
    let n = rows[0].len();
    let mut g: Vec<Vec<f64>> = (0..k).map(|a| (0..k).map(|b| (0..n).map(|c| rows[a][c] * rows[b][c]).sum()).collect()).collect();
    let mut inv: Vec<Vec<f64>> = (0..k).map(|a| (0..k).map(|b| if a == b { 1.0 } else { 0.0 }).collect()).collect();
    for c in 0..k {
        let p = (c..k).find(|&r| g[r][c].abs() > 1e-9).unwrap();
        g.swap(p, c);
        inv.swap(p, c);
        let pv = g[c][c];
        for j in 0..k {
            g[c][j] /= pv;
            inv[c][j] /= pv;
        }
        for r in 0..k {
            if r != c {
                let f = g[r][c];
                for j in 0..k {
                    g[r][j] -= f * g[c][j];
                    inv[r][j] -= f * inv[c][j];
                }
            }
        }
    }
    (0..k).map(|b| (0..n).map(|c| (0..k).map(|a| rows[a][c] * inv[a][b]).sum()).collect()).collect()
}

#[test]
fn face_sign_matches_orientation_determinant() {
    for n in 1..=5 {
        for r in 0..n {
            for rp in facets(n, r + 1) {
                for tau in rp.refinements() {
                    for i in 0..=r {
                        let rho = rp.delta(i);
                        let big = functionals(&rho, &tau);
                        let mut vecs = dual_vectors(&functionals(&rp, &tau));
                        vecs.push((0..n).map(|j| rp.rho[j] as f64 - rho.rho[j] as f64).collect());
                        let m: Vec<Vec<f64>> = big.iter().map(|row| vecs.iter().map(|v| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()).collect();
                        let d = rational_det(m);
                        assert!(d.abs() > 1e-9);
                        assert_eq!(d.signum() as i64, sign_face(&rp, i), "rho'={:?} tau={:?} i={}", rp.rho, tau, i);
                    }
                }
            }
        }
    }
}

#[test]
fn differentials_square_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (name, nmax) in [("A1", 5), ("A2", 4), ("B2", 3)] {
        let rank = CartanDatum::preset(name).unwrap().rank();
        for n in 0..=nmax {
            for pi in unfoldings(rank, n).into_iter().take(4) {
                let lam: Vec<i64> = (0..rank).map(|_| rng.gen_range(-6..7)).collect();
                let a = principal(name, pi, lam);
                a.complex_shriek().unwrap().check_d2(a.field()).unwrap();
                a.complex_star().unwrap().check_d2(a.field()).unwrap();
            }
        }
    }
}

#[test]
fn m_is_a_symmetric_chain_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for (name, nmax) in [("A1", 4), ("A2", 3), ("B2", 3)] {
        let rank = CartanDatum::preset(name).unwrap().rank();
        for n in 0..=nmax {
            for pi in unfoldings(rank, n) {
                let lam: Vec<i64> = (0..rank).map(|_| rng.gen_range(-6..7)).collect();
                let a = principal(name, pi.clone(), lam);
                let m = a.m_map().unwrap();
                m.check(a.field(), &a.complex_shriek().unwrap(), &a.complex_star().unwrap()).unwrap();
                assert!(m.maps.iter().all(|x| x.is_symmetric()), "{} {:?}", name, pi);
            }
        }
    }
}

fn random_order(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    v
}

#[test]
fn comparison_maps_are_chain_isomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (name, nmax) in [("A1", 4), ("A2", 3)] {
        let rank = CartanDatum::preset(name).unwrap().rank();
        for n in 1..=nmax {
            for pi in unfoldings(rank, n) {
                let lam: Vec<i64> = (0..rank).map(|_| rng.gen_range(-8..9)).collect();
                let a = principal(name, pi.clone(), lam.clone());
                let eta = random_order(&mut rng, n);
                for ext in [Ext::Shriek, Ext::Star] {
                    a.check_phi(&eta, ext, RhoSign::Corrected).unwrap_or_else(|e| panic!("{} {:?} {:?} {:?}: {}", name, pi, lam, ext, e));
                }
                a.check_square(&eta).unwrap();
            }
        }
    }
}

#[test]
fn printed_rho_sign_breaks_the_chain_map() {
    // the two signs differ by (-1)^{(r+1)(|J| - |rho^-1(0)|)}, first visible at |J| = 3
    for n in 1..=2 {
        let a = principal("A1", vec![0; n], vec![3]);
        assert!(a.check_phi(&(0..n).collect::<Vec<_>>(), Ext::Shriek, RhoSign::Printed).is_ok());
    }
    let a = principal("A1", vec![0; 3], vec![3]);
    assert!(a.check_phi(&[0, 1, 2], Ext::Shriek, RhoSign::Printed).is_err());
    assert!(a.check_phi(&[0, 1, 2], Ext::Star, RhoSign::Printed).is_err());
    assert!(a.check_phi(&[0, 1, 2], Ext::Shriek, RhoSign::Corrected).is_ok());
    let rho = PosFacet { rho: vec![1, 1, 2] };
    assert_eq!(sign_rho(&rho, RhoSign::Printed), -sign_rho(&rho, RhoSign::Corrected));
}

#[test]
fn skew_parts_compute_tor() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for (name, l, nmax) in [("A1", 5, 4), ("A1", 3, 4), ("A2", 5, 3)] {
        let (c, f) = setup(name, l);
        let rank = c.rank();
        for n in 1..=nmax {
            for pi in unfoldings(rank, n) {
                let mut lam: Vec<i64> = (0..rank).map(|_| rng.gen_range(-6..7)).collect();
                if rng.gen_bool(0.5) {
                    lam[0] = l as i64 * rng.gen_range(-1..2);
                }
                let a = ConfigArrangement::new(f.clone(), &c, pi.clone(), lam.clone(), Flavor::Principal).unwrap();
                let sh = a.skew_symmetrize(&a.complex_shriek().unwrap()).unwrap();
                let st = a.skew_symmetrize(&a.complex_star().unwrap()).unwrap();
                let m = a.skew_m(&sh, &st, &a.m_map().unwrap()).unwrap();
                let ic = image_complex(&f, &sh.complex, &st.complex, &m).unwrap();
                let h = Hochschild::new(FreeAlg::from_cartan(f.clone(), &c), vec![lam.clone()]);
                let nu = RootVec::of_word(&pi, rank);
                let ctx = format!("{} l={} pi={:?} lam={:?}", name, l, pi, lam);
                assert_eq!(cohomology_dims(&f, &sh.complex).unwrap(), h.tor_dims(&nu, Side::Free).unwrap(), "{}", ctx);
                assert_eq!(cohomology_dims(&f, &st.complex).unwrap(), h.tor_dims(&nu, Side::Dual).unwrap(), "{}", ctx);
                assert_eq!(cohomology_dims(&f, &ic).unwrap(), h.tor_dims_f(&nu).unwrap(), "{}", ctx);
            }
        }
    }
}

#[test]
fn shriek_cohomology_vanishes() {
    for lam in [-3, 0, 2, 5] {
        for n in 1..=4 {
            let a = principal("A1", vec![0; n], vec![lam]);
            assert!(cohomology_dims(a.field(), &a.complex_shriek().unwrap()).unwrap().iter().all(|&d| d == 0));
        }
    }
}

#[test]
fn euler_characteristic_ignores_lambda() {
    for n in 0..=4 {
        let chis: Vec<i64> = [-4, 0, 3, 7].iter().map(|&l| principal("A1", vec![0; n], vec![l]).complex_shriek().unwrap().euler()).collect();
        assert!(chis.windows(2).all(|w| w[0] == w[1]));
        let st: Vec<i64> = [-4, 0, 3].iter().map(|&l| principal("A1", vec![0; n], vec![l]).complex_star().unwrap().euler()).collect();
        assert_eq!(st[0], chis[0]);
        assert!(st.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn q_is_multiplicative_along_galleries() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for n in 1..=3 {
        for flavor in [Flavor::Principal, Flavor::Diagonal] {
            let (c, f) = setup("A2", 7);
            let pi: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            let a = ConfigArrangement::new(f.clone(), &c, pi, vec![rng.gen_range(-5..6), rng.gen_range(-5..6)], flavor).unwrap();
            let pts: Vec<Vec<i64>> = (0..30).map(|_| (0..n).map(|_| 2 * rng.gen_range(-5i64..6) + 1).collect()).collect();
            // C' lies between C and C'' when every hyperplane separating C from C' also separates C from C''
            // and no hyperplane separates both pairs (C, C') and (C', C'')
            let sides = |p: &[i64]| -> Vec<i64> {
                let mut s: Vec<i64> = if flavor == Flavor::Principal { p.iter().map(|x| x.signum()).collect() } else { vec![] };
                for x in 0..n {
                    for y in x + 1..n {
                        s.push((p[x] - p[y]).signum());
                    }
                }
                s
            };
            for c1 in &pts {
                for c2 in &pts {
                    for c3 in &pts {
                        let (s1, s2, s3) = (sides(c1), sides(c2), sides(c3));
                        let between = (0..s1.len()).all(|h| !(s1[h] != s2[h] && s2[h] != s3[h]));
                        if between {
                            assert_eq!(f.mul(&a.q_separating(c1, c2), &a.q_separating(c2, c3)), a.q_separating(c1, c3));
                        }
                    }
                }
                assert!(a.q_separating(c1, c1).is_one());
            }
        }
    }
}

#[test]
fn full_arrangement_with_trivial_system_gives_betti_numbers() {
    // the complement of {t_j = 0, t_a = t_b} in C^N has Poincare polynomial prod_{k=1}^N (1 + k t)
    let f = CycField::new(5, 1, 1).unwrap();
    for n in 1..=3 {
        let a = ConfigArrangement::with_pairing(f.clone(), vec![vec![0; n]; n], vec![0; n], Flavor::Principal).unwrap();
        let full = FullArrangement::new(&a).unwrap();
        let mut betti = vec![1usize];
        for k in 1..=n {
            let mut next = vec![0; betti.len() + 1];
            for (d, &b) in betti.iter().enumerate() {
                next[d] += b;
                next[d + 1] += k * b;
            }
            betti = next;
        }
        assert_eq!(cohomology_dims(&f, &full.complex(Ext::Star)).unwrap(), betti, "N={}", n);
    }
}

#[test]
fn full_arrangement_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for n in 1..=3 {
        for _ in 0..3 {
            let lam = vec![rng.gen_range(-6..7)];
            let a = principal("A1", vec![0; n], lam);
            let full = FullArrangement::new(&a).unwrap();
            let f = a.field();
            let sh = full.complex(Ext::Shriek);
            let st = full.complex(Ext::Star);
            sh.check_d2(f).unwrap();
            st.check_d2(f).unwrap();
            let m = full.m_map();
            m.check(f, &sh, &st).unwrap();
            assert!(m.maps.iter().all(|x| x.is_symmetric()));
            assert!(cohomology_dims(f, &sh).unwrap().iter().all(|&d| d == 0));
        }
    }
}

fn q_mat(f: &CycField, rows: Vec<Vec<(i64, i64)>>, q: &CycNum) -> CycMatrix {
    // entry (c, e) means c q^e
    let qi = f.inv(q).unwrap();
    CycMatrix::from_rows(
        rows.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|(c, e)| {
                        let p = if e >= 0 { f.pow(q, e as u32) } else { f.pow(&qi, (-e) as u32) };
                        f.mul(&p, &CycNum::from_int(c))
                    })
                    .collect()
            })
            .collect(),
    )
}

#[test]
fn one_point_matrices() {
    let (c, f) = setup("A1", 5);
    for lam in [-7, -2, 0, 1, 3, 4, 9] {
        let op = OnePoint::new(f.clone(), &c, 0, lam).unwrap();
        let q = f.zeta_pow_int(-lam);
        assert_eq!(op.q, q);
        assert_eq!(op.m, q_mat(&f, vec![vec![(1, 0), (1, 1)], vec![(1, 1), (1, 0)]], &q));
        assert_eq!(op.u_shriek, q_mat(&f, vec![vec![(1, 0), (0, 0)], vec![(0, 0), (-1, 0)]], &q));
        assert_eq!(op.u_star, q_mat(&f, vec![vec![(1, 0), (1, 1)], vec![(-1, 1), (-1, 0)]], &q));
        assert_eq!(op.v_shriek, q_mat(&f, vec![vec![(1, 0), (-1, -1)], vec![(1, -1), (-1, 0)]], &q));
        assert_eq!(op.v_star, q_mat(&f, vec![vec![(0, 0), (-1, -1)], vec![(1, -1), (0, 0)]], &q));
        // m commutes with u and v (m is the identity away from 0)
        assert_eq!(op.u_shriek.mul(&f, &op.m), op.u_star);
        assert_eq!(op.m.mul(&f, &op.v_star), op.v_shriek);
    }
}

#[test]
fn diagonal_m_matches_the_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for (name, nmax) in [("A1", 4), ("A2", 4), ("B2", 3)] {
        let (c, f) = setup(name, 5);
        for n in 1..=nmax {
            for pi in unfoldings(c.rank(), n) {
                let a = ConfigArrangement::new(f.clone(), &c, pi.clone(), vec![0; c.rank()], Flavor::Diagonal).unwrap();
                let eta = random_order(&mut rng, n);
                a.check_diagonal(&c, &eta).unwrap_or_else(|e| panic!("{} {:?}: {}", name, pi, e));
                assert!(a.diagonal_m_matrix().unwrap().is_symmetric());
            }
        }
    }
}

#[test]
fn diagonal_two_points() {
    let (c, f) = setup("A1", 5);
    let a = ConfigArrangement::new(f.clone(), &c, vec![0, 0], vec![0], Flavor::Diagonal).unwrap();
    let m = a.diagonal_m_matrix().unwrap();
    let z2 = f.zeta_pow_int(2);
    assert_eq!(m, CycMatrix::from_rows(vec![vec![CycNum::one(), -z2.clone()], vec![-z2, CycNum::one()]]));
    assert!(a.complex_shriek().is_err());
}

#[test]
fn ic_examples() {
    let a = principal("A1", vec![0], vec![3]);
    assert_eq!(a.ic_cohomology().unwrap(), vec![0, 0]);
    let a = principal("A1", vec![], vec![3]);
    assert_eq!(a.ic_cohomology().unwrap(), vec![1]);
}
