use crate::diagram::{trace_faces, PDCode};
use crate::Result;

/// Knot determinant from the Goeritz matrix of the checkerboard coloring.
///
/// Independent route from the bracket state sum: faces of the diagram are
/// two-colored, each crossing contributes `+-1` between its two white
/// quadrants by crossing type, and the determinant is the absolute
/// determinant of the matrix with one row and column deleted.
pub fn goeritz_determinant(pd: &PDCode) -> Result<u64> {
    if pd.crossing_count() == 0 {
        return Ok(1);
    }
    let faces = trace_faces(pd);

    // corner lookup: face id at (crossing, corner)
    let k = pd.crossing_count();
    let mut corner_face = vec![[usize::MAX; 4]; k];
    for (fid, face) in faces.iter().enumerate() {
        for &(c, corner) in face {
            corner_face[c][corner] = fid;
        }
    }

    // checkerboard coloring: faces across an edge get opposite colors; a
    // 4-valent sphere diagram always admits one
    let mut color = vec![usize::MAX; faces.len()];
    color[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        // neighbors of f: at every corner (v, p) of f, the faces across the
        // two edges bounding that corner are the corners (v, p-1) and (v, p+1)
        for &(v, p) in &faces[f] {
            for q in [(p + 3) % 4, (p + 1) % 4] {
                let g = corner_face[v][q];
                if color[g] == usize::MAX {
                    color[g] = 1 - color[f];
                    queue.push_back(g);
                } else {
                    assert_ne!(color[g], color[f], "diagram is not checkerboard colorable");
                }
            }
        }
    }

    let whites: Vec<usize> = (0..faces.len()).filter(|&f| color[f] == 0).collect();
    let windex = |f: usize| whites.binary_search(&f).expect("white face");

    let m = whites.len();
    if m <= 1 {
        return Ok(1);
    }
    let mut g = vec![vec![0i128; m]; m];
    for c in 0..k {
        // the white pair of quadrants is {0,2} or {1,3}; the pair identity is
        // the crossing type (a global flip leaves the minor determinant alone)
        let (pair, eta) = if color[corner_face[c][0]] == 0 {
            ([corner_face[c][0], corner_face[c][2]], -1i128)
        } else {
            ([corner_face[c][1], corner_face[c][3]], 1i128)
        };
        let (i, j) = (windex(pair[0]), windex(pair[1]));
        if i != j {
            g[i][j] -= eta;
            g[j][i] -= eta;
        }
    }
    for i in 0..m {
        let row_sum: i128 = (0..m).filter(|&j| j != i).map(|j| g[i][j]).sum();
        g[i][i] = -row_sum;
    }

    // principal minor: drop the last white face
    let n = m - 1;
    let mut a: Vec<Vec<i128>> = (0..n).map(|i| g[i][..n].to_vec()).collect();
    Ok(bareiss_det(&mut a).unsigned_abs() as u64)
}

/// Fraction-free integer determinant.
fn bareiss_det(a: &mut [Vec<i128>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..n - 1 {
        if a[p][p] == 0 {
            let swap = (p + 1..n).find(|&r| a[r][p] != 0);
            match swap {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
            }
            a[i][p] = 0;
        }
        prev = a[p][p];
    }
    sign * a[n - 1][n - 1]
}
