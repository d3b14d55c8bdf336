//! Tseitin parity formulas: the SAT-LP relaxation, the divide-and-conquer
//! enumerative refutation and the `.graph` file format.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ceil, floor, rational, to_rational, IntVector, Integer, RatVector};
use crate::lp::{find_point, InequalitySystem};
use crate::polytope::{support_value, SupportValue};
use crate::proof::{EnumNode, EnumerativeProof};

const MAX_DEGREE: usize = 20;

/// Graph with 0/1 vertex parities whose sum is odd; edge `i` is variable `x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TseitinInstance {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    parities: Vec<u8>,
    incident: Vec<Vec<usize>>,
}

impl TseitinInstance {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>, parities: Vec<u8>) -> Result<Self> {
        let bad = |m: String| Err(Error::Precondition(m));
        if parities.len() != num_vertices {
            return bad(format!("{} parities for {num_vertices} vertices", parities.len()));
        }
        if parities.iter().any(|&p| p > 1) {
            return bad("parities must be 0 or 1".into());
        }
        if parities.iter().map(|&p| p as usize).sum::<usize>() % 2 == 0 {
            return bad("parity sum is even".into());
        }
        let mut incident = vec![Vec::new(); num_vertices];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= num_vertices || v >= num_vertices {
                return bad(format!("edge {i} has an endpoint out of range"));
            }
            if u == v {
                return bad(format!("edge {i} is a self-loop"));
            }
            incident[u].push(i);
            incident[v].push(i);
        }
        Ok(TseitinInstance { num_vertices, edges, parities, incident })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn parities(&self) -> &[u8] {
        &self.parities
    }

    /// Edge indices at `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Characteristic vector of edges with one end in each of the two vertex masks.
    fn crossing(&self, left: &[bool], right: &[bool]) -> IntVector {
        self.edges
            .iter()
            .map(|&(u, v)| Integer::from(u8::from((left[u] && right[v]) || (left[v] && right[u]))))
            .collect()
    }

    fn parity_of(&self, set: &[usize]) -> u8 {
        set.iter().map(|&v| self.parities[v]).sum::<u8>() % 2
    }
}

/// Clauses forbidding every wrong-parity assignment at each vertex, then `0 ≤ x_e ≤ 1`.
pub fn tseitin_polytope(inst: &TseitinInstance) -> Result<InequalitySystem> {
    let m = inst.edges.len();
    if m == 0 {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    if inst.max_degree() > MAX_DEGREE {
        return Err(Error::Precondition(format!("degree {} exceeds {MAX_DEGREE}", inst.max_degree())));
    }
    let mut k = InequalitySystem::new(m);
    for v in 0..inst.num_vertices {
        let inc = &inst.incident[v];
        for mask in 0u32..(1 << inc.len()) {
            if mask.count_ones() % 2 == u32::from(inst.parities[v]) {
                continue;
            }
            let mut row = vec![Integer::zero(); m];
            for (bit, &e) in inc.iter().enumerate() {
                row[e] += if mask >> bit & 1 == 1 { 1 } else { -1 };
            }
            k.push_int(&IntVector::new(row), &Integer::from(i64::from(mask.count_ones()) - 1))?;
        }
    }
    for e in 0..m {
        k.push(RatVector::unit(m, e), rational(1))?;
        k.push(-&RatVector::unit(m, e), rational(0))?;
    }
    Ok(k)
}

/// The halving refutation: split the contradicting vertex set, branch on the
/// crossing count and the boundary count of one half, keep the half whose
/// parity still disagrees, and finish each vertex by enumerating its edges.
pub fn tseitin_sp_refutation(inst: &TseitinInstance) -> Result<EnumerativeProof> {
    let k = tseitin_polytope(inst)?;
    let all: Vec<usize> = (0..inst.num_vertices).collect();
    Ok(EnumerativeProof::new(Refuter { inst }.contradicting(&k, &all, &Integer::zero())?))
}

struct Refuter<'a> {
    inst: &'a TseitinInstance,
}

impl Refuter<'_> {
    fn mask(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.inst.num_vertices];
        for &v in set {
            m[v] = true;
        }
        m
    }

    /// Branches on every integer value of `f x` over `k`; `then` builds each child.
    fn branch(&self, k: &InequalitySystem, f: &IntVector, then: &mut dyn FnMut(&InequalitySystem, &Integer) -> Result<EnumNode>) -> Result<EnumNode> {
        if f.is_zero() {
            return then(k, &Integer::zero());
        }
        let fr = f.to_rational();
        let (hi, lo) = match (support_value(k, &fr)?, support_value(k, &-&fr)?) {
            (SupportValue::Finite(hi), SupportValue::Finite(neg)) => (hi, -neg),
            (SupportValue::NegInfinity, _) | (_, SupportValue::NegInfinity) => return Ok(EnumNode::Empty),
            _ => return Err(Error::Unbounded(f.to_string())),
        };
        let mut children = Vec::new();
        let mut b = ceil(&lo);
        while b <= floor(&hi) {
            let mut sub = k.clone();
            sub.push_equality(fr.clone(), to_rational(&b))?;
            let child = if find_point(&sub).is_err() { EnumNode::Empty } else { then(&sub, &b)? };
            children.push((b.clone(), child));
            b += Integer::one();
        }
        Ok(EnumNode::Branch { direction: f.clone(), lower: lo, upper: hi, children })
    }

    /// `set` has parity different from `boundary`, the known value of its edge boundary.
    fn contradicting(&self, k: &InequalitySystem, set: &[usize], boundary: &Integer) -> Result<EnumNode> {
        if find_point(k).is_err() {
            return Ok(EnumNode::Empty);
        }
        if let [v] = set {
            return self.enumerate_edges(k, self.inst.incident(*v));
        }
        let (s1, s2) = set.split_at(set.len().div_ceil(2));
        let (m1, m2, ms) = (self.mask(s1), self.mask(s2), self.mask(set));
        let outside: Vec<bool> = ms.iter().map(|&b| !b).collect();
        let not_s1: Vec<bool> = m1.iter().map(|&b| !b).collect();
        let inner = self.inst.crossing(&m1, &m2);
        let boundary1 = self.inst.crossing(&m1, &not_s1);
        let escape_empty = self.inst.crossing(&m1, &outside).is_zero();
        let p1 = self.inst.parity_of(s1);
        self.branch(k, &inner, &mut |k1, c| {
            let mut pick = |k2: &InequalitySystem, d: &Integer| -> Result<EnumNode> {
                if u8::from(d.is_odd()) != p1 {
                    self.contradicting(k2, s1, d)
                } else {
                    self.contradicting(k2, s2, &(boundary - d + c * 2))
                }
            };
            if escape_empty {
                pick(k1, c)
            } else {
                self.branch(k1, &boundary1, &mut pick)
            }
        })
    }

    fn enumerate_edges(&self, k: &InequalitySystem, edges: &[usize]) -> Result<EnumNode> {
        let Some((&e, rest)) = edges.split_first() else {
            return match find_point(k) {
                Err(_) => Ok(EnumNode::Empty),
                Ok(x) => Err(Error::Precondition(format!("parity clauses admit {x} after fixing every edge"))),
            };
        };
        let m = self.inst.edges.len();
        let unit: IntVector = (0..m).map(|i| Integer::from(u8::from(i == e))).collect();
        self.branch(k, &unit, &mut |sub, _| self.enumerate_edges(sub, rest))
    }
}

/// `V E`, then `E` lines `u v`, then the `V` parities on one line.
pub fn parse_graph(text: &str) -> Result<TseitinInstance> {
    let perr = |line: usize, m: &str| Error::Parse { line, message: m.into() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim())).filter(|(_, l)| !l.is_empty());
    let nums = |line: usize, l: &str| -> Result<Vec<usize>> {
        l.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| perr(line, &format!("bad number {t:?}")))).collect()
    };
    let (ln, header) = lines.next().ok_or_else(|| perr(1, "missing header"))?;
    let [v, e] = nums(ln, header)?[..] else {
        return Err(perr(ln, "header must be `V E`"));
    };
    let mut edges = Vec::with_capacity(e);
    for _ in 0..e {
        let (ln, l) = lines.next().ok_or_else(|| perr(0, "fewer edges than declared"))?;
        let [a, b] = nums(ln, l)?[..] else {
            return Err(perr(ln, "edge must be `u v`"));
        };
        edges.push((a, b));
    }
    let (ln, l) = lines.next().ok_or_else(|| perr(0, "missing parity line"))?;
    let parities = nums(ln, l)?;
    if parities.iter().any(|&p| p > 1) {
        return Err(perr(ln, "parities must be 0 or 1"));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(perr(ln, "trailing content"));
    }
    TseitinInstance::new(v, edges, parities.into_iter().map(|p| p as u8).collect())
}

pub fn format_graph(inst: &TseitinInstance) -> String {
    let mut out = format!("{} {}\n", inst.num_vertices, inst.edges.len());
    for (u, v) in &inst.edges {
        out += &format!("{u} {v}\n");
    }
    let p: Vec<String> = inst.parities.iter().map(u8::to_string).collect();
    out + &p.join(" ") + "\n"
}

/// Cycle on `n` vertices with parity one at vertex 0.
pub fn cycle(n: usize) -> Result<TseitinInstance> {
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut parities = vec![0; n];
    parities[0] = 1;
    TseitinInstance::new(n, edges, parities)
}

/// Complete graph on `n` vertices with parity one at vertex 0.
pub fn complete(n: usize) -> Result<TseitinInstance> {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut parities = vec![0; n];
    parities[0] = 1;
    TseitinInstance::new(n, edges, parities)
}

/// `rows × cols` grid, row-major vertices, with parity one at vertex 0.
pub fn grid(rows: usize, cols: usize) -> Result<TseitinInstance> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let mut parities = vec![0; rows * cols];
    parities[0] = 1;
    TseitinInstance::new(rows * cols, edges, parities)
}
