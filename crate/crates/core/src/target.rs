//! Weighted target graphs: symmetric matrices of nonnegative rationals with
//! loops allowed.
//!
//! File layout: the vertex count `k`, then `k` rows of `k` whitespace
//! separated entries, each an integer or `p/q`. `#` comments are allowed.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::Rat;

/// Target vertex ids of the hard-core target (`K_2` with one loop).
pub mod hardcore {
    /// The looped vertex: "not in the independent set".
    pub const OUT: usize = 0;
    /// The unlooped vertex: "in the independent set".
    pub const IN: usize = 1;
}

/// Target vertex ids of the Widom-Rowlinson target (`P_3` with all loops).
pub mod widom {
    /// Red end of the path.
    pub const A: usize = 0;
    /// White center.
    pub const B: usize = 1;
    /// Blue end of the path.
    pub const C: usize = 2;
}

/// Serializes as `{"k": .., "weights": [["p/q", ..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TargetGraph {
    k: usize,
    #[serde(rename = "weights")]
    w: Vec<Vec<Rat>>,
}

impl TargetGraph {
    /// Validates squareness, symmetry and nonnegativity.
    pub fn new(w: Vec<Vec<Rat>>) -> Result<Self> {
        let k = w.len();
        for (i, row) in w.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {k}",
                    row.len()
                )));
            }
            for (j, x) in row.iter().enumerate() {
                if x.is_negative() {
                    return Err(Error::InvalidArgument(format!(
                        "negative weight at ({i}, {j})"
                    )));
                }
                if *x != w[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "weights not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(TargetGraph { k, w })
    }

    /// A 0/1 target from an integer adjacency matrix.
    pub fn from_adjacency(a: &[&[u32]]) -> Result<Self> {
        Self::new(
            a.iter()
                .map(|row| row.iter().map(|&x| Rat::integer(x)).collect())
                .collect(),
        )
    }

    /// `K_q`: proper `q`-colorings.
    pub fn complete(q: usize) -> Self {
        let w = (0..q)
            .map(|i| {
                (0..q)
                    .map(|j| if i == j { Rat::zero() } else { Rat::one() })
                    .collect()
            })
            .collect();
        TargetGraph { k: q, w }
    }

    /// `K_2` with a loop at [`hardcore::OUT`]: independent sets.
    pub fn hardcore() -> Self {
        Self::from_adjacency(&[&[1, 1], &[1, 0]]).unwrap()
    }

    /// `P_3` with a loop at every vertex: Widom-Rowlinson configurations.
    pub fn widom_rowlinson() -> Self {
        Self::from_adjacency(&[&[1, 1, 0], &[1, 1, 1], &[0, 1, 1]]).unwrap()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weight(&self, i: usize, j: usize) -> &Rat {
        &self.w[i][j]
    }

    pub fn weights(&self) -> &[Vec<Rat>] {
        &self.w
    }

    /// `Σ_{i,j} w[i][j]` over ordered pairs; equals `hom(K_2, G)`.
    pub fn edge_weight_sum(&self) -> Rat {
        self.w.iter().flatten().fold(Rat::zero(), |acc, x| &acc + x)
    }

    /// True when every entry is 0 or 1.
    pub fn is_simple(&self) -> bool {
        self.w
            .iter()
            .flatten()
            .all(|x| x.is_zero() || *x == Rat::one())
    }

    /// True for `K_k`: zero diagonal, every off-diagonal entry 1.
    pub fn is_complete(&self) -> bool {
        (0..self.k).all(|i| {
            (0..self.k).all(|j| {
                if i == j {
                    self.w[i][j].is_zero()
                } else {
                    self.w[i][j] == Rat::one()
                }
            })
        })
    }

    /// Connectivity of the support graph (positive off-diagonal entries).
    pub fn is_connected(&self) -> bool {
        if self.k == 0 {
            return true;
        }
        let mut seen = vec![false; self.k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.k {
                if !seen[j] && !self.w[i][j].is_zero() {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Equality up to relabeling of target vertices, by brute force over
    /// permutations. Intended for `k <= 8`.
    pub fn is_isomorphic_to(&self, other: &TargetGraph) -> bool {
        if self.k != other.k {
            return false;
        }
        let mut perm: Vec<usize> = (0..self.k).collect();
        let check = |p: &[usize]| {
            (0..self.k).all(|i| (0..self.k).all(|j| self.w[i][j] == other.w[p[i]][p[j]]))
        };
        if check(&perm) {
            return true;
        }
        // Heap's algorithm.
        let mut c = vec![0usize; self.k];
        let mut i = 0;
        while i < self.k {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                if check(&perm) {
                    return true;
                }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        false
    }

    /// Integer weights `w * d` with `d` the least common denominator.
    pub fn scaled_integer_weights(&self) -> (Vec<Vec<BigUint>>, BigUint) {
        let d = self
            .w
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled = self
            .w
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x.numer() * (&d / x.denom());
                        v.to_biguint().expect("weights are nonnegative")
                    })
                    .collect()
            })
            .collect();
        (scaled, d.to_biguint().unwrap())
    }

    /// Float copy of the weight matrix.
    pub fn to_f64_matrix(&self) -> Vec<Vec<f64>> {
        self.w
            .iter()
            .map(|row| row.iter().map(Rat::to_f64).collect())
            .collect()
    }

    /// Compact one-line descriptor: rows separated by `;`.
    pub fn describe(&self) -> String {
        let rows: Vec<String> = self
            .w
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        if x.denom().is_one() {
                            x.numer().to_string()
                        } else {
                            x.to_string()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("k={}[{}]", self.k, rows.join(";"))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text.lines().enumerate().flat_map(|(i, l)| {
            l.split('#')
                .next()
                .unwrap_or("")
                .split_whitespace()
                .map(move |t| (i + 1, t))
        });
        let (line, first) = tokens
            .next()
            .ok_or_else(|| Error::parse("line 1", "missing vertex count"))?;
        let k: usize = first.parse().map_err(|_| {
            Error::parse(
                format!("line {line}"),
                format!("invalid vertex count {first:?}"),
            )
        })?;
        if k > 64 {
            return Err(Error::parse(
                format!("line {line}"),
                "targets are limited to 64 vertices",
            ));
        }
        let mut w = vec![Vec::with_capacity(k); k];
        for (i, row) in w.iter_mut().enumerate() {
            for j in 0..k {
                let (line, tok) = tokens.next().ok_or_else(|| {
                    Error::parse("end of input", format!("missing entry ({i}, {j})"))
                })?;
                let x: Rat = tok
                    .parse()
                    .map_err(|e: String| Error::parse(format!("line {line}"), e))?;
                if x.is_negative() {
                    return Err(Error::parse(
                        format!("line {line}"),
                        format!("negative weight {tok}"),
                    ));
                }
                row.push(x);
            }
        }
        if let Some((line, tok)) = tokens.next() {
            return Err(Error::parse(
                format!("line {line}"),
                format!("trailing token {tok:?}"),
            ));
        }
        Self::new(w).map_err(|e| Error::parse("matrix", e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.k);
        for row in &self.w {
            let cells: Vec<String> = row
                .iter()
                .map(|x| {
                    if x.denom().is_one() {
                        x.numer().to_string()
                    } else {
                        x.to_string()
                    }
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Upper bound on `log2` of the largest scaled integer weight.
    pub(crate) fn scaled_weight_bits(scaled: &[Vec<BigUint>]) -> u64 {
        scaled.iter().flatten().map(|x| x.bits()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_weight_sums() {
        assert_eq!(TargetGraph::complete(3).edge_weight_sum(), Rat::integer(6));
        assert_eq!(TargetGraph::hardcore().edge_weight_sum(), Rat::integer(3));
        assert_eq!(
            TargetGraph::widom_rowlinson().edge_weight_sum(),
            Rat::integer(7)
        );
    }

    #[test]
    fn parse_and_print() {
        let g = TargetGraph::parse("3\n1 1/2 0\n1/2 0 2/4\n0 1/2 1\n").unwrap();
        assert_eq!(g.weight(0, 1), &Rat::new(1, 2));
        assert_eq!(TargetGraph::parse(&g.to_text()).unwrap(), g);
        assert_eq!(g.describe(), "k=3[1,1/2,0;1/2,0,1/2;0,1/2,1]");
        let (scaled, d) = g.scaled_integer_weights();
        assert_eq!(d, BigUint::from(2u32));
        assert_eq!(scaled[0][0], BigUint::from(2u32));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(TargetGraph::parse("2\n0 1\n0 0\n").is_err()); // asymmetric
        assert!(TargetGraph::parse("2\n0 -1\n-1 0\n").is_err());
        assert!(TargetGraph::parse("2\n0 1\n1\n").is_err());
        assert!(TargetGraph::parse("2\n0 1\n1 0 5\n").is_err());
        assert!(TargetGraph::parse("2\n0 1/0\n1/0 0\n").is_err());
        assert!(TargetGraph::parse("").is_err());
    }

    #[test]
    fn isomorphism_by_relabeling() {
        let relabeled = TargetGraph::from_adjacency(&[&[0, 1], &[1, 1]]).unwrap();
        assert!(relabeled.is_isomorphic_to(&TargetGraph::hardcore()));
        let wr = TargetGraph::from_adjacency(&[&[1, 1, 1], &[1, 1, 0], &[1, 0, 1]]).unwrap();
        assert!(wr.is_isomorphic_to(&TargetGraph::widom_rowlinson()));
        assert!(!TargetGraph::complete(3).is_isomorphic_to(&TargetGraph::widom_rowlinson()));
        assert!(TargetGraph::complete(4).is_complete());
        assert!(!TargetGraph::hardcore().is_complete());
    }

    #[test]
    fn connectivity() {
        assert!(TargetGraph::widom_rowlinson().is_connected());
        let two_loops = TargetGraph::from_adjacency(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(!two_loops.is_connected());
    }
}
