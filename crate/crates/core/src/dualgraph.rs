//! Weighted dual graph of the strict transform of the line together with the
//! exceptional curves, obtained by resolving the curve and the line and then
//! blowing up `r` more times along the curve.
//!
//! The curve is followed through the blow-ups as a parametrized branch
//! `u = t^p, v = sum t^(q_k p / P_k)`. At each step the two local
//! coordinates are the equations of at most two visible divisors.

use std::collections::BTreeSet;
use std::fmt::Write;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::puiseux::CharacteristicData;
use crate::rat::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub label: String,
    /// Self-intersection number.
    pub weight: i64,
    #[serde(rename = "is_Ltilde")]
    pub is_ltilde: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    /// In order of creation, the line first.
    pub vertices: Vec<Vertex>,
    /// Index pairs `[i, j]` with `i < j`, sorted.
    pub edges: Vec<[usize; 2]>,
    /// Labels of the curves the removed last exceptional curve meets.
    pub estar_attachment: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl DualGraph {
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&[a, b]| if a == i { Some(b) } else if b == i { Some(a) } else { None })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Weights on the diagonal, 1 for every edge.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0; n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            m[i][i] = v.weight;
        }
        for &[a, b] in &self.edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }

    /// Exact test that the intersection matrix is negative definite: every
    /// pivot of the elimination of its negative is positive.
    pub fn is_negative_definite(&self) -> bool {
        let mut m: Vec<Vec<Rat>> =
            self.intersection_matrix().iter().map(|row| row.iter().map(|&x| rat::int(-x)).collect()).collect();
        let n = m.len();
        for i in 0..n {
            if m[i][i] <= Rat::zero() {
                return false;
            }
            for j in i + 1..n {
                if m[j][i].is_zero() {
                    continue;
                }
                let f = &m[j][i] / &m[i][i];
                let (top, bottom) = m.split_at_mut(j);
                for (a, b) in bottom[0][i..].iter_mut().zip(&top[i][i..]) {
                    *a -= &f * b;
                }
            }
        }
        true
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in &self.vertices {
            let shape = if v.is_ltilde { ", shape=box" } else { "" };
            writeln!(s, "  \"{}\" [label=\"w={}\"{shape}];", v.label, v.weight).unwrap();
        }
        for &[a, b] in &self.edges {
            writeln!(s, "  \"{}\" -- \"{}\";", self.vertices[a].label, self.vertices[b].label).unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax { pos: e.column(), msg: e.to_string() })
    }
}

pub fn export_graph(g: &DualGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => g.to_dot(),
        GraphFormat::Json => g.to_json(),
    }
}

/// A power series in `t` known up to (not including) `t^len`.
#[derive(Debug, Clone)]
struct Series(Vec<Rat>);

impl Series {
    fn ord(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// `self / d` where `d` has order `a` no larger than the order of `self`.
    fn div(&self, d: &Series, a: usize) -> Series {
        let len = self.0.len().min(d.0.len()) - a;
        let s = &self.0[a..a + len];
        let den = &d.0[a..a + len];
        let mut q: Vec<Rat> = Vec::with_capacity(len);
        for i in 0..len {
            let mut acc = s[i].clone();
            for j in 1..=i {
                acc -= &den[j] * &q[i - j];
            }
            q.push(acc / &den[0]);
        }
        Series(q)
    }
}

struct Builder {
    vertices: Vec<Vertex>,
    edges: BTreeSet<(usize, usize)>,
}

impl Builder {
    fn add_vertex(&mut self) -> usize {
        let i = self.vertices.len();
        self.vertices.push(Vertex { label: format!("E{i}"), weight: -1, is_ltilde: false });
        i
    }

    fn link(&mut self, a: usize, b: usize) {
        self.edges.insert((a.min(b), a.max(b)));
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.edges.remove(&(a.min(b), a.max(b)));
    }

    /// Blows up a point lying on the given divisors.
    fn blow_up(&mut self, through: &[usize]) -> usize {
        let e = self.add_vertex();
        for &d in through {
            self.vertices[d].weight -= 1;
            self.link(e, d);
        }
        if let [a, b] = through {
            self.unlink(*a, *b);
        }
        e
    }
}

pub fn build_dual_graph(local_pairs: &CharacteristicData, r: u32) -> Result<DualGraph> {
    let Some(first) = local_pairs.pairs.first() else {
        return Err(Error::Precondition("at least one Puiseux pair is required".into()));
    };
    if first.q <= 0 || first.q >= first.p {
        return Err(Error::Precondition(format!(
            "order {}/{} is not below 1; the curve is not tangent to the line",
            first.q, first.p
        )));
    }
    let big_p = local_pairs.polydromy();
    let top = local_pairs.pairs.last().unwrap().q;
    let len = (2 * (top + big_p) + 16) as usize;
    let mut u = Series(vec![Rat::zero(); len]);
    u.0[big_p as usize] = rat::int(1);
    let mut v = Series(vec![Rat::zero(); len]);
    for k in 1..=local_pairs.len() {
        let e = local_pairs.exponent(k) * rat::int(big_p);
        v.0[rat::to_i64(&e).expect("integral") as usize] = rat::int(1);
    }

    let mut b = Builder {
        vertices: vec![Vertex { label: "L".into(), weight: 1, is_ltilde: true }],
        edges: BTreeSet::new(),
    };
    // Divisors through the current point whose equations are u = 0 and v = 0.
    let (mut du, mut dv): (Option<usize>, Option<usize>) = (Some(0), None);
    let exhausted = || Error::Invariant(format!("series precision exhausted resolving {local_pairs}"));
    loop {
        let a = u.ord().ok_or_else(exhausted)?;
        let done = match (du, dv) {
            (Some(_), None) => a == 1,
            (None, Some(_)) => v.ord().ok_or_else(exhausted)? == 1,
            _ => false,
        };
        if done {
            break;
        }
        let bb = v.ord().ok_or_else(exhausted)?;
        let through: Vec<usize> = du.into_iter().chain(dv).collect();
        let e = b.blow_up(&through);
        if a < bb {
            v = v.div(&u, a);
            du = Some(e);
        } else if a > bb {
            u = u.div(&v, bb);
            dv = Some(e);
        } else {
            let mut w = v.div(&u, a);
            w.0[0] = Rat::zero();
            v = w;
            du = Some(e);
            dv = None;
        }
    }
    let mut last = du.or(dv).expect("one divisor at the end");
    for _ in 0..r {
        last = b.blow_up(&[last]);
    }

    let attach: Vec<usize> = b.edges.iter().filter_map(|&(x, y)| if x == last { Some(y) } else if y == last { Some(x) } else { None }).collect();
    let estar_attachment = attach.iter().map(|&i| b.vertices[i].label.clone()).collect();
    let vertices: Vec<Vertex> = b.vertices.into_iter().take(last).collect();
    let edges = b.edges.into_iter().filter(|&(x, y)| x != last && y != last).map(|(x, y)| [x, y]).collect();
    Ok(DualGraph { vertices, edges, estar_attachment })
}
