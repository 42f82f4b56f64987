use std::fmt;

use super::gauss::{Pass, SignedGaussCode};
use crate::{Error, Result};

/// Planar diagram code: one 4-tuple of arc labels per crossing, listed
/// counterclockwise starting at the incoming under-strand.
///
/// Arcs are the `2k` edges between consecutive crossing visits, numbered from
/// 1 along the traversal. For a positive crossing the over-strand enters at
/// position 3 and leaves at position 1; for a negative crossing it enters at
/// position 1 and leaves at position 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDCode {
    crossings: Vec<[usize; 4]>,
}

impl PDCode {
    pub fn empty() -> Self {
        Self { crossings: Vec::new() }
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.crossings.len() * 2
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3]))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Convert a signed Gauss code to a PD code, checking that the code is
/// realizable as a diagram on the sphere.
///
/// Realizability is decided by tracing the faces of the 4-valent graph under
/// the rotation system the signs dictate: a sphere embedding must satisfy
/// `V - E + F = 2`, i.e. `F = k + 2`.
pub fn gauss_to_pd(code: &SignedGaussCode) -> Result<PDCode> {
    code.validate()?;
    let tokens = code.tokens();
    let n = tokens.len();
    if n == 0 {
        return Ok(PDCode::empty());
    }
    let k = code.crossing_count();

    // edge after visit i is labeled i+1; visit i has incoming edge i, outgoing i+1
    let in_edge = |i: usize| (i + n - 1) % n + 1;
    let out_edge = |i: usize| i + 1;

    let mut labels: Vec<usize> = tokens.iter().map(|t| t.label).collect();
    labels.sort_unstable();
    labels.dedup();

    let mut crossings = Vec::with_capacity(k);
    for label in labels {
        let over = tokens
            .iter()
            .position(|t| t.label == label && t.pass == Pass::Over)
            .expect("validated code");
        let under = tokens
            .iter()
            .position(|t| t.label == label && t.pass == Pass::Under)
            .expect("validated code");
        let sign = tokens[over].sign;
        let (a, c) = (in_edge(under), out_edge(under));
        let (in_o, out_o) = (in_edge(over), out_edge(over));
        let x = if sign > 0 { [a, out_o, c, in_o] } else { [a, in_o, c, out_o] };
        crossings.push(x);
    }
    let pd = PDCode { crossings };
    if count_faces(&pd) != k + 2 {
        return Err(Error::NonRealizableCode);
    }
    Ok(pd)
}

/// Directed edge side: `(edge label, true if traversed tail-to-head end)`.
/// Faces are the orbits of "arrive at a slot, leave by the next slot
/// counterclockwise".
pub(crate) fn count_faces(pd: &PDCode) -> usize {
    trace_faces(pd).len()
}

/// Face structure: each face is a list of `(crossing index, corner)` it
/// passes through, where corner `p` sits between tuple slots `p` and `p+1`.
pub(crate) fn trace_faces(pd: &PDCode) -> Vec<Vec<(usize, usize)>> {
    let k = pd.crossings.len();
    if k == 0 {
        return vec![Vec::new(), Vec::new()];
    }
    // the two (crossing, slot) occurrences of each edge label
    let mut ends: std::collections::HashMap<usize, Vec<(usize, usize)>> =
        std::collections::HashMap::new();
    for (ci, x) in pd.crossings.iter().enumerate() {
        for (slot, &e) in x.iter().enumerate() {
            ends.entry(e).or_default().push((ci, slot));
        }
    }

    // dart = arriving at (crossing, slot); 4k darts in total
    let mut visited = vec![[false; 4]; k];
    let mut faces = Vec::new();
    for start_c in 0..k {
        for start_slot in 0..4 {
            if visited[start_c][start_slot] {
                continue;
            }
            let mut face = Vec::new();
            let (mut c, mut slot) = (start_c, start_slot);
            loop {
                if visited[c][slot] {
                    break;
                }
                visited[c][slot] = true;
                face.push((c, slot));
                // leave by the next slot counterclockwise, arrive at the
                // other end of that edge
                let out_slot = (slot + 1) % 4;
                let e = pd.crossings[c][out_slot];
                let pair = &ends[&e];
                let (nc, nslot) = if pair[0] == (c, out_slot) { pair[1] } else { pair[0] };
                c = nc;
                slot = nslot;
            }
            faces.push(face);
        }
    }
    faces
}
