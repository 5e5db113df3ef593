//! Exhaustive closed-chain lattices on small supports.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use super::chains::EdgeClass;
use super::theta::{boundary_chain, theta1};
use crate::algebra::{GroupAlgebraElement, Ideal};
use crate::linalg::{hnf, integer_kernel, lattice_equal, IntMatrix};
use crate::modular::{edge_matrix, Cusp, Psl2};

/// `1, S, U, US, U^2, U^2 S`: the elements whose triangles have vertices in `{oo, 0, 1}`.
pub fn six_elements() -> Vec<Psl2> {
    ["1", "S", "U", "US", "U^2", "U^2S"].iter().map(|w| Psl2::parse_word(w).unwrap()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleKernelReport {
    /// Support, as words.
    pub pairs: Vec<(String, String)>,
    pub constraints: usize,
    /// Rows span the closed combinations, in Hermite normal form.
    #[serde(skip)]
    pub kernel: IntMatrix,
    pub kernel_rank: usize,
    /// Left translates of the `I2` generators supported on the 36 triangles.
    pub translates: usize,
    pub translate_rank: usize,
    /// Whether the second, longer translate search was needed.
    pub enlarged: bool,
    pub generators_in_kernel: bool,
    pub classes_exclusive: bool,
    pub lattice_equal: bool,
}

/// Coordinates of `x` on the support, if it fits.
fn to_vector(x: &GroupAlgebraElement, index: &BTreeMap<Vec<Psl2>, usize>) -> Option<Vec<BigInt>> {
    let mut v = vec![BigInt::from(0); index.len()];
    for (k, c) in x.terms() {
        v[*index.get(k)?] += c;
    }
    Some(v)
}

fn translate_lattice(
    gens: &[GroupAlgebraElement],
    deltas: &BTreeSet<Vec<Psl2>>,
    index: &BTreeMap<Vec<Psl2>, usize>,
) -> Vec<Vec<BigInt>> {
    let mut rows = vec![];
    for d in deltas {
        for g in gens {
            if let Some(v) = to_vector(&g.left_translate(d), index) {
                rows.push(v);
            }
        }
    }
    rows
}

/// Kernel of `Theta_2` on combinations of the 36 triangles `(g1, g2) T2`, `gi` in
/// [`six_elements`], compared with the lattice spanned by left translates of the
/// `I2` generators that stay inside this support.
pub fn triangle36_kernel() -> TriangleKernelReport {
    let six = six_elements();
    let support: Vec<Vec<Psl2>> = six.iter().flat_map(|a| six.iter().map(move |b| vec![a.clone(), b.clone()])).collect();
    let index: BTreeMap<Vec<Psl2>, usize> = support.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();

    // One row per (class, line vertex); the entry is that vertex's boundary coefficient.
    let mut rows: BTreeMap<(EdgeClass, Cusp), Vec<BigInt>> = BTreeMap::new();
    let mut classes_exclusive = true;
    for (j, key) in support.iter().enumerate() {
        let chain = boundary_chain(&GroupAlgebraElement::basis(key.clone())).expect("order 2");
        classes_exclusive &= chain.terms().all(|(e, _)| e.candidate_classes().len() == 1);
        let (bounds, stray) = chain.class_boundaries();
        assert!(stray.is_empty(), "triangle edges are always transverse");
        for (class, b) in bounds {
            for (c, k) in b.terms() {
                rows.entry((class.clone(), c.clone())).or_insert_with(|| vec![BigInt::from(0); support.len()])[j] += k;
            }
        }
    }
    let constraints = rows.len();
    let m = IntMatrix::from_rows(support.len(), rows.into_values().collect());
    let kernel = integer_kernel(&m);

    let gens = Ideal::I2.generators();
    let generators_in_kernel = gens.iter().all(|g| {
        to_vector(g, &index).is_some_and(|v| m.mul_vec(&v).iter().all(|x| x == &BigInt::from(0)))
    });

    let mut deltas: BTreeSet<Vec<Psl2>> = support.iter().cloned().collect();
    let mut lattice = translate_lattice(&gens, &deltas, &index);
    let mut enlarged = false;
    let mut equal = !lattice.is_empty() && lattice_equal(&kernel, &IntMatrix::from_rows(support.len(), lattice.clone()));
    if !equal {
        enlarged = true;
        let products: BTreeSet<Psl2> = six.iter().flat_map(|a| six.iter().map(move |b| a * b)).collect();
        deltas = products.iter().flat_map(|a| products.iter().map(move |b| vec![a.clone(), b.clone()])).collect();
        lattice = translate_lattice(&gens, &deltas, &index);
        equal = lattice_equal(&kernel, &IntMatrix::from_rows(support.len(), lattice.clone()));
    }
    let translates = lattice.len();
    let translate_rank = hnf(&IntMatrix::from_rows(support.len(), lattice)).rows();
    TriangleKernelReport {
        pairs: support.iter().map(|k| (k[0].word(), k[1].word())).collect(),
        constraints,
        kernel_rank: kernel.rows(),
        kernel,
        translates,
        translate_rank,
        enlarged,
        generators_in_kernel,
        classes_exclusive,
        lattice_equal: equal,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderOneReport {
    /// Oriented Farey edges between points of `{oo, 0, 1, -1}`.
    pub edges: Vec<(String, String)>,
    pub nullity: usize,
    pub translates: usize,
    pub theta1_manin_zero: bool,
    pub lattice_equal: bool,
}

/// One-variable analogue: closed edge chains on `{oo, 0, 1, -1}` against the
/// translates of `1 + S` and `1 + U + U^2`.
pub fn order_one_analogue() -> OrderOneReport {
    let b0 = [Cusp::infinity(), Cusp::integer(0), Cusp::integer(1), Cusp::integer(-1)];
    let mut edges = vec![];
    for x in &b0 {
        for y in &b0 {
            if x != y {
                if let Some(g) = edge_matrix(x, y) {
                    edges.push(g);
                }
            }
        }
    }
    let index: BTreeMap<Vec<Psl2>, usize> = edges.iter().enumerate().map(|(i, g)| (vec![g.clone()], i)).collect();
    let vertex = |c: &Cusp| b0.iter().position(|b| b == c).unwrap();
    let mut m = IntMatrix::zeros(b0.len(), edges.len());
    for (j, g) in edges.iter().enumerate() {
        m.set(vertex(&g.at_infinity()), j, BigInt::from(1));
        m.set(vertex(&g.at_zero()), j, BigInt::from(-1));
    }
    let kernel = integer_kernel(&m);
    let gens = Ideal::I1.generators();
    let theta1_manin_zero = gens.iter().all(|g| theta1(g).unwrap().is_zero());
    let deltas: BTreeSet<Vec<Psl2>> = index.keys().cloned().collect();
    let lattice = translate_lattice(&gens, &deltas, &index);
    let equal = !lattice.is_empty() && lattice_equal(&kernel, &IntMatrix::from_rows(edges.len(), lattice.clone()));
    OrderOneReport {
        edges: edges.iter().map(|g| (g.at_infinity().to_string(), g.at_zero().to_string())).collect(),
        nullity: kernel.rows(),
        translates: lattice.len(),
        theta1_manin_zero,
        lattice_equal: equal,
    }
}
