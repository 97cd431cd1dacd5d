//! Generators for the worked examples: linear actions on projective space,
//! a non-GKM action on CP^3, the six-sphere and its blow-up, and the circle
//! actions on the Fano threefolds V_5 and V_22.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpdata::{Edge, FixedPoint, FixedPointData, Multigraph};
use crate::genus::ChiYPolynomial;
use crate::weight_algebra::{is_unimodular_basis, Weight};

/// A value an entry is known to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Invariant {
    Count(u64),
    Genus(ChiYPolynomial),
    Flag(bool),
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Count(c) => write!(f, "{c}"),
            Invariant::Genus(g) => write!(f, "{g}"),
            Invariant::Flag(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub data: FixedPointData,
    pub graph: Option<Multigraph>,
    /// Keys: `euler`, `chi_y`, and for non-GKM data `gkm`.
    pub expected: BTreeMap<String, Invariant>,
}

impl CatalogEntry {
    fn new(name: impl Into<String>, data: FixedPointData, graph: Multigraph, chi: ChiYPolynomial) -> Self {
        let mut expected = BTreeMap::new();
        expected.insert("euler".to_string(), Invariant::Count(data.num_points() as u64));
        expected.insert("chi_y".to_string(), Invariant::Genus(chi));
        CatalogEntry {
            name: name.into(),
            data,
            graph: Some(graph),
            expected,
        }
    }

    pub fn expected_chi_y(&self) -> Option<&ChiYPolynomial> {
        match self.expected.get("chi_y") {
            Some(Invariant::Genus(g)) => Some(g),
            _ => None,
        }
    }

    pub fn expected_euler(&self) -> Option<u64> {
        match self.expected.get("euler") {
            Some(Invariant::Count(c)) => Some(*c),
            _ => None,
        }
    }
}

fn ints(v: &[i64]) -> Weight {
    Weight::from_i64s(v)
}

/// Linear `T^n` action on `CP^n` for a basis `a_1..a_n` of `Z^n`.
///
/// Points `p0..pn` with `a_0 = 0`; `p_i` carries `{a_j - a_i}_{j != i}` and
/// the edge `p_i -> p_j` (`i < j`) is labeled `a_j - a_i`.
pub fn cpn(n: usize, basis: &[Weight]) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::Precondition("cpn needs n >= 1".into()));
    }
    if basis.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: basis.len(),
        });
    }
    if !is_unimodular_basis(basis)? {
        return Err(Error::NotUnimodular(n));
    }
    let mut a = vec![Weight::zero(n)];
    a.extend(basis.iter().cloned());
    let id = |i: usize| format!("p{i}");

    let points = (0..=n)
        .map(|i| {
            let ws = (0..=n).filter(|&j| j != i).map(|j| &a[j] - &a[i]).collect();
            FixedPoint::new(id(i), ws)
        })
        .collect();
    let data = FixedPointData::new(n, n, points)?.with_torus_manifold(true)?;
    let edges = (0..=n)
        .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
        .map(|(i, j)| Edge::new(id(i), id(j), &a[j] - &a[i]))
        .collect();
    let graph = Multigraph::for_data(&data, edges)?;
    Ok(CatalogEntry::new(
        format!("cp{n}"),
        data,
        graph,
        ChiYPolynomial::all_ones(n),
    ))
}

/// `cpn` with the standard basis.
pub fn cpn_standard(n: usize) -> Result<CatalogEntry> {
    let basis: Vec<Weight> = (0..n).map(|i| Weight::unit(n, i)).collect();
    cpn(n, &basis)
}

/// `T^2` acting on `CP^3` with weights `(0, 1, 2)` and `(0, 0, 0, 1)` on the
/// coordinates: four fixed points, not GKM at `p2`.
pub fn cp3_nongkm() -> CatalogEntry {
    let points = vec![
        FixedPoint::new("p0", vec![ints(&[1, 0]), ints(&[2, 0]), ints(&[0, 1])]),
        FixedPoint::new("p1", vec![ints(&[-1, 0]), ints(&[1, 0]), ints(&[-1, 1])]),
        FixedPoint::new("p2", vec![ints(&[-2, 0]), ints(&[-1, 0]), ints(&[-2, 1])]),
        FixedPoint::new("p3", vec![ints(&[0, -1]), ints(&[1, -1]), ints(&[2, -1])]),
    ];
    let data = FixedPointData::new(2, 3, points).expect("well-formed");
    let edges = vec![
        Edge::new("p0", "p1", ints(&[1, 0])),
        Edge::new("p0", "p2", ints(&[2, 0])),
        Edge::new("p0", "p3", ints(&[0, 1])),
        Edge::new("p1", "p2", ints(&[1, 0])),
        Edge::new("p1", "p3", ints(&[-1, 1])),
        Edge::new("p2", "p3", ints(&[-2, 1])),
    ];
    let graph = Multigraph::for_data(&data, edges).expect("endpoints exist");
    let mut entry = CatalogEntry::new("cp3-nongkm", data, graph, ChiYPolynomial::all_ones(3));
    entry.expected.insert("gkm".to_string(), Invariant::Flag(false));
    entry
}

fn independent(a: &Weight, b: &Weight) -> Result<()> {
    if a.rank() != b.rank() {
        return Err(Error::Dimension {
            expected: a.rank(),
            found: b.rank(),
        });
    }
    if a.is_zero() || b.is_zero() || a.is_parallel(b) {
        return Err(Error::Dependent(a.clone(), b.clone()));
    }
    Ok(())
}

/// `S^6` with a `T^2` action: weights `{-a-b, a, b}` at `p` and
/// `{-a, -b, a+b}` at `q`, joined by three parallel edges.
pub fn s6(a: &Weight, b: &Weight) -> Result<CatalogEntry> {
    independent(a, b)?;
    let ab = a + b;
    let data = FixedPointData::new(
        a.rank(),
        3,
        vec![
            FixedPoint::new("p", vec![-&ab, a.clone(), b.clone()]),
            FixedPoint::new("q", vec![-a, -b, ab.clone()]),
        ],
    )?;
    let edges = vec![
        Edge::new("p", "q", a.clone()),
        Edge::new("p", "q", b.clone()),
        Edge::new("q", "p", ab),
    ];
    let graph = Multigraph::for_data(&data, edges)?;
    Ok(CatalogEntry::new("s6", data, graph, ChiYPolynomial::new(vec![0, 1, 1, 0])))
}

/// The blow-up of `S^6` at a fixed point: the point `p` is replaced by three
/// points `p1, p2, p3`.
pub fn s6_blowup(a: &Weight, b: &Weight) -> Result<CatalogEntry> {
    independent(a, b)?;
    let lin = |x: i64, y: i64| &a.scale(&x.into()) + &b.scale(&y.into());
    let data = FixedPointData::new(
        a.rank(),
        3,
        vec![
            FixedPoint::new("p1", vec![lin(-2, -1), lin(1, 0), lin(-1, 1)]),
            FixedPoint::new("p2", vec![lin(-1, -1), lin(2, 1), lin(1, 2)]),
            FixedPoint::new("p3", vec![lin(1, -1), lin(-1, -2), lin(0, 1)]),
            FixedPoint::new("q", vec![lin(-1, 0), lin(0, -1), lin(1, 1)]),
        ],
    )?;
    let edges = vec![
        Edge::new("p1", "q", lin(1, 0)),
        Edge::new("p3", "q", lin(0, 1)),
        Edge::new("q", "p2", lin(1, 1)),
        Edge::new("p2", "p1", lin(2, 1)),
        Edge::new("p2", "p3", lin(1, 2)),
        Edge::new("p1", "p3", lin(-1, 1)),
    ];
    let graph = Multigraph::for_data(&data, edges)?;
    Ok(CatalogEntry::new(
        "s6-blowup",
        data,
        graph,
        ChiYPolynomial::new(vec![0, 2, 2, 0]),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanoVariant {
    V5,
    V22,
}

impl FanoVariant {
    /// The free weight `a` in `{-1, 1, a}`.
    pub fn a(self) -> i64 {
        match self {
            FanoVariant::V5 => 4,
            FanoVariant::V22 => 5,
        }
    }
}

/// Circle action with four fixed points on `V_5` or `V_22`, weights stored
/// as length-1 vectors.
pub fn fano(variant: FanoVariant) -> CatalogEntry {
    let a = variant.a();
    let c = |xs: &[i64]| xs.iter().map(|&x| ints(&[x])).collect::<Vec<_>>();
    let data = FixedPointData::new(
        1,
        3,
        vec![
            FixedPoint::new("p1", c(&[1, 2, 3])),
            FixedPoint::new("p2", c(&[-1, 1, a])),
            FixedPoint::new("p3", c(&[-1, -a, 1])),
            FixedPoint::new("p4", c(&[-1, -2, -3])),
        ],
    )
    .expect("well-formed");
    let edges = vec![
        Edge::new("p1", "p4", ints(&[2])),
        Edge::new("p1", "p4", ints(&[3])),
        Edge::new("p1", "p2", ints(&[1])),
        Edge::new("p2", "p3", ints(&[1])),
        Edge::new("p2", "p3", ints(&[a])),
        Edge::new("p3", "p4", ints(&[1])),
    ];
    let graph = Multigraph::for_data(&data, edges).expect("endpoints exist");
    let name = match variant {
        FanoVariant::V5 => "fano-v5",
        FanoVariant::V22 => "fano-v22",
    };
    CatalogEntry::new(name, data, graph, ChiYPolynomial::all_ones(3))
}

/// Every fixed entry with default parameters, plus `cpn` for `n = 1..=4`.
pub fn all_entries() -> Vec<CatalogEntry> {
    let (a, b) = (ints(&[1, 0]), ints(&[0, 1]));
    let mut v: Vec<CatalogEntry> = (1..=4).map(|n| cpn_standard(n).expect("standard basis")).collect();
    v.push(cp3_nongkm());
    v.push(s6(&a, &b).expect("independent"));
    v.push(s6_blowup(&a, &b).expect("independent"));
    v.push(fano(FanoVariant::V5));
    v.push(fano(FanoVariant::V22));
    v
}
