use crate::partition::Partition;
use crate::weyl::Permutation;

/// Rows of a standard tableau.
pub type Tableau = Vec<Vec<usize>>;

/// Row-insertion RSK of the one-line word `w(1) ... w(n)`: the insertion tableau `P`
/// and the recording tableau `Q`.
pub fn rsk(w: &Permutation) -> (Tableau, Tableau) {
    let mut p: Tableau = Vec::new();
    let mut q: Tableau = Vec::new();
    for (step, x) in w.images().into_iter().enumerate() {
        let mut bump = x;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![bump]);
                q.push(vec![step + 1]);
                break;
            }
            match p[row].iter().position(|&y| y > bump) {
                Some(k) => {
                    bump = std::mem::replace(&mut p[row][k], bump);
                    row += 1;
                }
                None => {
                    p[row].push(bump);
                    q[row].push(step + 1);
                    break;
                }
            }
        }
    }
    (p, q)
}

pub fn shape(w: &Permutation) -> Partition {
    const SMALL: usize = 16;
    let images = w.raw();
    if images.len() > SMALL {
        let (p, _) = rsk(w);
        return Partition::new(p.iter().map(Vec::len).collect()).expect("RSK rows are weakly decreasing");
    }
    let mut rows = [[0u8; SMALL]; SMALL];
    let mut lens = [0usize; SMALL];
    let mut nrows = 0;
    for &x in images {
        let mut bump = x;
        let mut r = 0;
        loop {
            let row = &mut rows[r][..lens[r]];
            match row.iter().position(|&y| y > bump) {
                Some(k) => {
                    std::mem::swap(&mut row[k], &mut bump);
                    r += 1;
                }
                None => {
                    rows[r][lens[r]] = bump;
                    lens[r] += 1;
                    nrows = nrows.max(r + 1);
                    break;
                }
            }
        }
    }
    Partition::new(lens[..nrows].to_vec()).expect("RSK rows are weakly decreasing")
}
