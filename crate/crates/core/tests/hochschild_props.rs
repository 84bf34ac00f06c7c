use qgroup_core::cyclotomic::{CycField, CycNum};
use qgroup_core::freealg::{permutations, FreeAlg, FreeElement, TensorElement};
use qgroup_core::hochschild::{fold, sigma_pi, symmetrize_average, Hochschild, Side};
use qgroup_core::linalg::cohomology_dims;
use qgroup_core::rootdata::{CartanDatum, RootVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alg(name: &str, l: u64) -> FreeAlg {
    let c = CartanDatum::preset(name).unwrap();
    FreeAlg::from_cartan(CycField::new(l, 1, c.varpi()).unwrap(), &c)
}

fn weights_up_to(rank: usize, depth: usize) -> Vec<RootVec> {
    (0..=depth).flat_map(|d| RootVec::of_depth(rank, d)).collect()
}

#[test]
fn differentials_square_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, depth, nmax) in [("A1", 4, 3), ("A2", 3, 2), ("B2", 3, 1)] {
        let a = alg(name, 5);
        let rank = a.rank();
        for n in 1..=nmax {
            let lams: Vec<Vec<i64>> = (0..n).map(|_| (0..rank).map(|_| rng.gen_range(-6..7)).collect()).collect();
            let h = Hochschild::new(a.clone(), lams);
            for nu in weights_up_to(rank, depth) {
                for side in [Side::Free, Side::Dual] {
                    h.build_complex(&nu, side).check_d2(a.field()).unwrap();
                }
            }
        }
    }
}

#[test]
fn form_is_a_chain_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (name, depth, n) in [("A1", 4, 2), ("A2", 3, 1), ("A1", 3, 3), ("B2", 3, 1)] {
        let a = alg(name, 5);
        let rank = a.rank();
        let lams: Vec<Vec<i64>> = (0..n).map(|_| (0..rank).map(|_| rng.gen_range(-6..7)).collect()).collect();
        let h = Hochschild::new(a.clone(), lams);
        for nu in weights_up_to(rank, depth) {
            let free = h.build_complex(&nu, Side::Free);
            let dual = h.build_complex(&nu, Side::Dual);
            h.s_map(&nu).check(a.field(), &free, &dual).unwrap();
        }
    }
}

// number of linear extensions of the block order of rho
fn count_orders(rho: &[i64]) -> usize {
    permutations(rho.len())
        .into_iter()
        .filter(|tau| (0..rho.len()).all(|i| (0..rho.len()).all(|j| rho[i] >= rho[j] || tau[i] < tau[j])))
        .count()
}

fn count_rho(n_letters: usize, r: usize, nmods: usize) -> usize {
    // maps J -> [-nmods+1, r] hitting every value in 1..=r
    let vals: Vec<i64> = (-(nmods as i64) + 1..=r as i64).collect();
    let mut total = 0;
    let mut idx = vec![0usize; n_letters];
    loop {
        let rho: Vec<i64> = idx.iter().map(|&k| vals[k]).collect();
        if (1..=r as i64).all(|v| rho.contains(&v)) {
            total += count_orders(&rho);
        }
        let mut t = 0;
        loop {
            if t == n_letters {
                return total;
            }
            idx[t] += 1;
            if idx[t] < vals.len() {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

#[test]
fn basis_counts_match_refinements() {
    let c = CartanDatum::preset("A1").unwrap();
    let field = CycField::new(5, 1, c.varpi()).unwrap();
    for nl in 0..=4 {
        let pi = vec![0; nl];
        let unf = FreeAlg::unfolded(field.clone(), &c, &pi);
        for nmods in 1..=2 {
            let h = Hochschild::new(unf.clone(), vec![vec![1; nl]; nmods]);
            let chi = RootVec(vec![1; nl]);
            for r in 0..=nl {
                assert_eq!(h.basis(&chi, r).len(), count_rho(nl, r, nmods), "|J|={} r={} n={}", nl, r, nmods);
            }
        }
    }
}

#[test]
fn tensor_action_is_associative() {
    let a = alg("A2", 5);
    let h = Hochschild::new(a.clone(), vec![vec![2, -1], vec![3, 4], vec![0, 1]]);
    let xs: Vec<Vec<Vec<usize>>> = vec![vec![vec![], vec![], vec![]], vec![vec![0], vec![1], vec![]], vec![vec![], vec![1, 0], vec![0]]];
    let words: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![0, 1], vec![1, 1]];
    for x in &xs {
        let mut xe = TensorElement::zero();
        xe.add_term(x.clone(), &CycNum::one());
        for u in &words {
            for v in &words {
                let uv = FreeElement::monomial([u.as_slice(), v.as_slice()].concat());
                let lhs = h.tensor_action_elem(&uv, &xe);
                let inner = h.tensor_action_elem(&FreeElement::monomial(v.clone()), &xe);
                let rhs = h.tensor_action_elem(&FreeElement::monomial(u.clone()), &inner);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn one_module_action_is_left_multiplication() {
    let a = alg("A2", 7);
    let h = Hochschild::new(a, vec![vec![1, 2]]);
    let t = h.tensor_action(&[0, 1], &[vec![1]]);
    assert_eq!(t.terms.len(), 1);
    assert!(t.coeff(&[vec![0, 1, 1]]).is_one());
}

#[test]
fn steinberg_tensor_products_are_free() {
    // L(Lambda_0) free over f, so f-Tor of L(Lambda_0) (x) L(Lambda_1) sits in
    // degree 0 with the dimension of L(Lambda_1) at nu
    let a = alg("A1", 5);
    let field = a.field().clone();
    for lam1 in [0i64, 2, 4, 7] {
        let h = Hochschild::new(a.clone(), vec![vec![4], vec![lam1]]);
        let v1 = qgroup_core::verma::Verma::new(a.clone(), vec![lam1]);
        for k in 0..=4u32 {
            let nu = RootVec(vec![k]);
            let dims = cohomology_dims(&field, &h.build_complex_f(&nu).unwrap()).unwrap();
            let (top, rest) = dims.split_last().unwrap();
            assert_eq!(*top, v1.dim_l(&nu), "lam1={} nu={}", lam1, k);
            assert!(rest.iter().all(|&d| d == 0), "lam1={} nu={} dims={:?}", lam1, k, dims);
        }
    }
}

#[test]
fn f_complex_dims_are_products_of_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (name, depth, n) in [("A1", 5, 2), ("A2", 3, 1), ("A2", 2, 2)] {
        let a = alg(name, 5);
        let rank = a.rank();
        let lams: Vec<Vec<i64>> = (0..n).map(|_| (0..rank).map(|_| rng.gen_range(-6..7)).collect()).collect();
        let h = Hochschild::new(a.clone(), lams);
        for nu in weights_up_to(rank, depth) {
            let fc = h.build_complex_f(&nu).unwrap();
            for (p, r) in (0..=nu.depth()).rev().enumerate() {
                let mut patterns: Vec<Vec<RootVec>> = h
                    .basis(&nu, r)
                    .iter()
                    .map(|l| l.iter().map(|w| RootVec::of_word(w, rank)).collect())
                    .collect();
                patterns.sort();
                patterns.dedup();
                let expect: usize = patterns
                    .iter()
                    .map(|pat| {
                        let fpart: usize = pat[..r].iter().map(|m| a.dim_f(m)).product();
                        let lpart: usize = pat[r..].iter().zip(h.modules()).map(|(m, v)| v.dim_l(m)).product();
                        fpart * lpart
                    })
                    .sum();
                assert_eq!(fc.dims[p], expect, "nu={} r={}", nu, r);
            }
        }
    }
}

#[test]
fn symmetrization_identities() {
    let c = CartanDatum::preset("A2").unwrap();
    let field = CycField::new(5, 1, c.varpi()).unwrap();
    let folded = FreeAlg::from_cartan(field.clone(), &c);
    for pi in [vec![0, 0], vec![0, 1], vec![0, 0, 1], vec![0, 1, 1, 0], vec![1, 1, 1]] {
        let unf = FreeAlg::unfolded(field.clone(), &c, &pi);
        let nu = RootVec::of_word(&pi, 2);
        let g = sigma_pi(&pi).len() as i64;
        let basis = folded.basis(&nu);
        for x in &basis {
            let xe = FreeElement::monomial(x.clone());
            let ax = symmetrize_average(&xe, &pi, 2).unwrap();
            assert_eq!(fold(&ax, &pi), xe.scale(&field, &CycNum::from_int(g)));
            for y in &basis {
                let ay = symmetrize_average(&FreeElement::monomial(y.clone()), &pi, 2).unwrap();
                let lhs = unf.form_s_elem(&ax, &ay);
                let rhs = field.mul(&folded.form_s(x, y), &CycNum::from_int(g));
                assert_eq!(lhs, rhs, "pi={:?} x={:?} y={:?}", pi, x, y);
            }
        }
        let chi = RootVec(vec![1; pi.len()]);
        for w in unf.basis(&chi) {
            let we = FreeElement::monomial(w.clone());
            let back = symmetrize_average(&fold(&we, &pi), &pi, 2).unwrap();
            let mut orbit = FreeElement::zero();
            for s in sigma_pi(&pi) {
                orbit.add_term(w.iter().map(|&j| s[j]).collect(), &CycNum::one());
            }
            assert_eq!(back, orbit);
            for x in &basis {
                let ax = symmetrize_average(&FreeElement::monomial(x.clone()), &pi, 2).unwrap();
                assert_eq!(unf.form_s_elem(&ax, &we), folded.form_s_elem(&FreeElement::monomial(x.clone()), &fold(&we, &pi)));
            }
        }
    }
}
