//! Complexes with Z/d vertex colours and the induced directed-edge colouring,
//! carriers of the colored adjacency (Hecke) operators.

use thiserror::Error;

use crate::action::{quotient_by_action, ActionError, GroupAction, QuotientResult};
use crate::complex::SimplicialComplex;
use crate::operators::{chain_basis, BasisKind, ChainOperator};

#[derive(Debug, Error)]
pub enum ColoredError {
    #[error("colour data inconsistent at edge ({u},{v}): {detail}")]
    ColoringInconsistent { u: u32, v: u32, detail: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// A complex with vertex colours in Z/d. Edge colours are the colour
/// differences; they are nonzero in both directions and antisymmetric mod d.
#[derive(Debug, Clone)]
pub struct ColoredComplex {
    pub complex: SimplicialComplex,
    pub d: u32,
    pub vertex_colors: Vec<u32>,
}

impl ColoredComplex {
    /// Validates the colour axioms: values in range and no monochromatic edge.
    pub fn new(
        complex: SimplicialComplex,
        d: u32,
        vertex_colors: Vec<u32>,
    ) -> Result<Self, ColoredError> {
        if d < 2 {
            return Err(ColoredError::Invalid(format!("d must be >= 2, got {d}")));
        }
        if vertex_colors.len() != complex.num_vertices() {
            return Err(ColoredError::Invalid(format!(
                "{} vertex colours for {} vertices",
                vertex_colors.len(),
                complex.num_vertices()
            )));
        }
        if let Some(&bad) = vertex_colors.iter().find(|&&c| c >= d) {
            return Err(ColoredError::Invalid(format!("vertex colour {bad} out of range 0..{d}")));
        }
        for (u, v) in complex.edges() {
            if vertex_colors[u as usize] == vertex_colors[v as usize] {
                return Err(ColoredError::ColoringInconsistent {
                    u,
                    v,
                    detail: "edge endpoints share a colour (edge colour would be 0)".into(),
                });
            }
        }
        Ok(ColoredComplex { complex, d, vertex_colors })
    }

    /// Builds from explicit directed edge colours, deriving vertex colours by
    /// propagation when they are not supplied, and cross-validating both.
    pub fn from_edge_colors(
        complex: SimplicialComplex,
        d: u32,
        vertex_colors: Option<Vec<u32>>,
        edge_colors: &[(u32, u32, u32)],
    ) -> Result<Self, ColoredError> {
        if d < 2 {
            return Err(ColoredError::Invalid(format!("d must be >= 2, got {d}")));
        }
        let n = complex.num_vertices() as u32;
        for &(u, v, c) in edge_colors {
            if u >= n || v >= n {
                return Err(ColoredError::Invalid(format!("edge ({u},{v}) out of range")));
            }
            if !complex
                .contains_cell(&crate::complex::Cell::new(vec![u, v]).map_err(|e| {
                    ColoredError::Invalid(e.to_string())
                })?)
            {
                return Err(ColoredError::ColoringInconsistent {
                    u,
                    v,
                    detail: "coloured edge is not an edge of the complex".into(),
                });
            }
            if c == 0 || c >= d {
                return Err(ColoredError::ColoringInconsistent {
                    u,
                    v,
                    detail: format!("edge colour {c} outside 1..{d}"),
                });
            }
        }
        // antisymmetry of explicitly given pairs
        for &(u, v, c) in edge_colors {
            if let Some(&(_, _, c2)) = edge_colors.iter().find(|&&(a, b, _)| a == v && b == u) {
                if (c + c2) % d != 0 {
                    return Err(ColoredError::ColoringInconsistent {
                        u,
                        v,
                        detail: format!("colours {c} and {c2} do not sum to 0 mod {d}"),
                    });
                }
            }
        }
        let colors = match vertex_colors {
            Some(vc) => {
                if vc.len() != complex.num_vertices() {
                    return Err(ColoredError::Invalid("wrong number of vertex colours".into()));
                }
                for &(u, v, c) in edge_colors {
                    let want = (vc[v as usize] % d + d - vc[u as usize] % d) % d;
                    if want != c % d {
                        return Err(ColoredError::ColoringInconsistent {
                            u,
                            v,
                            detail: format!(
                                "edge colour {c} but vertex colours give {want}"
                            ),
                        });
                    }
                }
                vc
            }
            None => {
                // propagate from vertex 0; every edge must carry a colour
                let mut vc = vec![u32::MAX; n as usize];
                let mut directed = std::collections::HashMap::new();
                for &(u, v, c) in edge_colors {
                    directed.insert((u, v), c % d);
                    directed.entry((v, u)).or_insert((d - c % d) % d);
                }
                for (u, v) in complex.edges() {
                    if !directed.contains_key(&(u, v)) {
                        return Err(ColoredError::ColoringInconsistent {
                            u,
                            v,
                            detail: "edge has no colour and vertex colours were not given".into(),
                        });
                    }
                }
                vc[0] = 0;
                let mut stack = vec![0u32];
                while let Some(u) = stack.pop() {
                    for &w in complex.neighbors(u) {
                        let c = directed[&(u, w)];
                        let want = (vc[u as usize] + c) % d;
                        if vc[w as usize] == u32::MAX {
                            vc[w as usize] = want;
                            stack.push(w);
                        } else if vc[w as usize] != want {
                            return Err(ColoredError::ColoringInconsistent {
                                u,
                                v: w,
                                detail: "edge colours are inconsistent around a cycle".into(),
                            });
                        }
                    }
                }
                if vc.iter().any(|&c| c == u32::MAX) {
                    return Err(ColoredError::Invalid(
                        "complex is not connected; cannot derive vertex colours".into(),
                    ));
                }
                vc
            }
        };
        Self::new(complex, d, colors)
    }

    /// Colour of the directed edge (u, v).
    pub fn edge_color(&self, u: u32, v: u32) -> u32 {
        (self.vertex_colors[v as usize] + self.d - self.vertex_colors[u as usize]) % self.d
    }

    /// Vertices whose closed neighbourhood is interior; product rows through
    /// such vertices are uncontaminated on generated balls.
    pub fn is_two_interior(&self, v: u32) -> bool {
        self.complex.is_interior(v)
            && self.complex.neighbors(v).iter().all(|&w| self.complex.is_interior(w))
    }

    /// Assembles the colored adjacency operators a_1..a_{d-1} on vertex
    /// functions and verifies the adjoint pairing and commutation (the latter
    /// restricted to uncontaminated rows on ball-generated complexes).
    pub fn hecke_family(&self) -> Result<HeckeFamily, ColoredError> {
        let basis = chain_basis(&self.complex, BasisKind::Antiforms, 0)
            .map_err(|e| ColoredError::Invalid(e.to_string()))?;
        let mut ops = Vec::with_capacity(self.d as usize - 1);
        for color in 1..self.d {
            let mut ints = Vec::new();
            for (u, v) in self.complex.edges() {
                if self.edge_color(u, v) == color {
                    ints.push((u, v, 1i64));
                }
                if self.edge_color(v, u) == color {
                    ints.push((v, u, 1i64));
                }
            }
            ops.push(ChainOperator::from_int_entries(basis.clone(), basis.clone(), ints));
        }
        // a_i^* = a_{d-i} exactly, as integer matrices
        let mut adjoint_pairing_exact = true;
        for i in 1..self.d {
            let a = &ops[(i - 1) as usize];
            let b = &ops[(self.d - i - 1) as usize];
            if a.adjoint().int_equal(b) != Some(true) {
                adjoint_pairing_exact = false;
            }
        }
        let frontier_contaminated = !self.complex.frontier().is_empty();
        let mut max_comm: f64 = 0.0;
        let two_interior: Vec<bool> = (0..self.complex.num_vertices() as u32)
            .map(|v| self.is_two_interior(v))
            .collect();
        for i in 0..ops.len() {
            for j in (i + 1)..ops.len() {
                let c = ops[i]
                    .compose(&ops[j])
                    .and_then(|x| x.sub(&ops[j].compose(&ops[i])?))
                    .map_err(|e| ColoredError::Invalid(e.to_string()))?;
                let norm = if frontier_contaminated {
                    c.frobenius_norm_rows(|r| two_interior[r as usize])
                } else {
                    c.frobenius_norm()
                };
                max_comm = max_comm.max(norm);
            }
        }
        Ok(HeckeFamily {
            ops,
            d: self.d,
            adjoint_pairing_exact,
            max_interior_commutator: max_comm,
            commuting_on_interior: max_comm <= 1e-10,
            frontier_contaminated,
        })
    }

    /// Quotient by a colour-preserving admissible action; colours descend to
    /// orbit representatives.
    pub fn quotient_colored(
        &self,
        action: &GroupAction,
        cap: usize,
    ) -> Result<(ColoredComplex, QuotientResult), ColoredError> {
        for (gi, g) in action.generators.iter().enumerate() {
            for v in 0..self.complex.num_vertices() {
                if self.vertex_colors[g[v] as usize] != self.vertex_colors[v] {
                    return Err(ColoredError::Invalid(format!(
                        "generator {gi} does not preserve vertex colours (vertex {v})"
                    )));
                }
            }
        }
        let q = quotient_by_action(&self.complex, action, cap)?;
        let mut colors = vec![0u32; q.quotient.num_vertices()];
        for (label, orbit) in q.vertex_orbits.iter().enumerate() {
            colors[label] = self.vertex_colors[orbit[0] as usize];
        }
        let colored = ColoredComplex::new(q.quotient.clone(), self.d, colors)?;
        Ok((colored, q))
    }
}

/// The colored adjacency operators with their verified structure flags.
#[derive(Debug, Clone)]
pub struct HeckeFamily {
    /// a_1, ..., a_{d-1} in colour order.
    pub ops: Vec<ChainOperator>,
    pub d: u32,
    pub adjoint_pairing_exact: bool,
    pub max_interior_commutator: f64,
    pub commuting_on_interior: bool,
    pub frontier_contaminated: bool,
}

impl HeckeFamily {
    pub fn op(&self, color: u32) -> &ChainOperator {
        &self.ops[(color - 1) as usize]
    }

    pub fn as_refs(&self) -> Vec<&ChainOperator> {
        self.ops.iter().collect()
    }
}

/// K_{m,m,m} with transversal triangles, coloured by part (d = 3).
pub fn tripartite_colored(m: usize) -> ColoredComplex {
    let x = crate::generate::tripartite_triangle_complex(m);
    let colors: Vec<u32> = (0..3 * m as u32).map(|v| v / m as u32).collect();
    ColoredComplex::new(x, 3, colors).expect("tripartite colouring is consistent")
}

/// The 2-step circulant triangle complex on Z/n with colours v mod 3 (3 | n).
pub fn circulant_colored(n: usize) -> ColoredComplex {
    assert!(n % 3 == 0, "the circulant colouring needs 3 | n");
    let x = crate::generate::circulant_triangle_complex(n);
    let colors: Vec<u32> = (0..n as u32).map(|v| v % 3).collect();
    ColoredComplex::new(x, 3, colors).expect("circulant colouring is consistent")
}

/// A bipartite complex coloured by its two sides (d = 2); None when the
/// complex is not bipartite.
pub fn bipartite_colored(x: SimplicialComplex) -> Option<ColoredComplex> {
    let n = x.num_vertices();
    let mut col = vec![u32::MAX; n];
    col[0] = 0;
    let mut stack = vec![0u32];
    while let Some(u) = stack.pop() {
        for &w in x.neighbors(u) {
            if col[w as usize] == u32::MAX {
                col[w as usize] = 1 - col[u as usize];
                stack.push(w);
            } else if col[w as usize] == col[u as usize] {
                return None;
            }
        }
    }
    if col.iter().any(|&c| c == u32::MAX) {
        return None;
    }
    ColoredComplex::new(x, 2, col).ok()
}
