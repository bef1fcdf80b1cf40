use super::{Barcode, FilteredComplex, Interval};
use crate::error::{Error, Result};

const NO_SLOT: u32 = u32::MAX;

/// Computes the persistence barcode of a filtered complex by column
/// reduction of its boundary matrix over the two-element field.
///
/// Columns are processed one dimension at a time from the top down, so every
/// pivot found while reducing dimension d+1 clears the corresponding
/// positive column in dimension d before it is ever reduced. This skips
/// exactly the columns plain left-to-right reduction would zero out, and
/// produces the same pairing.
///
/// Memory stays proportional to the complex plus the reduced columns that
/// own a pivot: boundary columns are built one at a time from a sorted
/// per-dimension index (no global face table), only pivot-owning columns
/// are retained, and they are dropped once their dimension is finished.
///
/// Pairs whose birth and death carry the same filtration value are dropped:
/// such classes are alive at no threshold, and flag complexes produce them
/// in bulk (a clique and the cycle it fills can enter together).
pub fn reduce_and_extract(complex: &FilteredComplex) -> Result<Barcode> {
    let simplices = complex.simplices();
    let total = simplices.len();
    if total >= u32::MAX as usize {
        return Err(Error::InvalidParam("complex too large to index".into()));
    }

    let max_dim = complex.max_dimension();
    let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); max_dim + 1];
    for (p, s) in simplices.iter().enumerate() {
        by_dim[s.dim()].push(p as u32);
    }

    // Positions of one dimension sorted by vertex list: binary-search facet
    // lookup, and duplicate detection while building.
    let lex_index = |positions: &[u32]| -> Result<Vec<u32>> {
        let mut idx = positions.to_vec();
        idx.sort_unstable_by(|&a, &b| {
            simplices[a as usize]
                .vertices()
                .cmp(simplices[b as usize].vertices())
        });
        for w in idx.windows(2) {
            let (a, b) = (w[0] as usize, w[1] as usize);
            if simplices[a].vertices() == simplices[b].vertices() {
                return Err(Error::InvalidParam(format!(
                    "duplicate simplex {:?}",
                    simplices[a].vertices()
                )));
            }
        }
        Ok(idx)
    };
    // The top dimension is never the lookup target below; check it here so
    // duplicates are rejected in every dimension.
    lex_index(&by_dim[max_dim])?;

    let mut died = vec![false; total];
    let mut negative = vec![false; total];
    let mut pairs: Vec<(u32, u32)> = Vec::new();

    // Reduced columns that own a pivot, live for one dimension at a time;
    // `owner_slot[pivot]` indexes into `owner_cols`.
    let mut owner_slot: Vec<u32> = vec![NO_SLOT; total];
    let mut owner_cols: Vec<Box<[u32]>> = Vec::new();

    let mut cur: Vec<u32> = Vec::new();
    let mut buf: Vec<u32> = Vec::new();
    let mut facet: Vec<u32> = Vec::new();

    for d in (1..=max_dim).rev() {
        let lower = lex_index(&by_dim[d - 1])?;
        let dim_pair_start = pairs.len();

        for &p in &by_dim[d] {
            // Build (and always validate) the boundary column.
            let verts = simplices[p as usize].vertices();
            cur.clear();
            for skip in 0..verts.len() {
                facet.clear();
                facet.extend(
                    verts
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v),
                );
                let q = lower
                    .binary_search_by(|&cand| {
                        simplices[cand as usize].vertices().cmp(facet.as_slice())
                    })
                    .map(|i| lower[i])
                    .map_err(|_| {
                        Error::NonmonotoneFiltration(format!(
                            "facet {facet:?} of {verts:?} missing from the complex"
                        ))
                    })?;
                if q >= p {
                    return Err(Error::NonmonotoneFiltration(format!(
                        "facet {facet:?} enters after its coface {verts:?}"
                    )));
                }
                cur.push(q);
            }
            cur.sort_unstable();

            if died[p as usize] {
                continue; // cleared: reduces to zero, nothing to record
            }
            loop {
                let Some(&pivot) = cur.last() else {
                    break; // positive column
                };
                let slot = owner_slot[pivot as usize];
                if slot == NO_SLOT {
                    owner_slot[pivot as usize] = owner_cols.len() as u32;
                    owner_cols.push(cur.as_slice().into());
                    negative[p as usize] = true;
                    died[pivot as usize] = true;
                    pairs.push((pivot, p));
                    break;
                }
                symmetric_diff_into(&cur, &owner_cols[slot as usize], &mut buf);
                std::mem::swap(&mut cur, &mut buf);
            }
        }

        for &(pivot, _) in &pairs[dim_pair_start..] {
            owner_slot[pivot as usize] = NO_SLOT;
        }
        owner_cols.clear();
    }

    let max_filtration = complex.max_filtration();
    let mut dims: Vec<Vec<Interval>> = vec![Vec::new(); max_dim + 1];
    for &(b, dth) in &pairs {
        let birth = &simplices[b as usize];
        let death = simplices[dth as usize].value();
        if death <= birth.value() {
            continue;
        }
        dims[birth.dim()].push(Interval {
            birth: birth.value(),
            death,
            infinite: false,
        });
    }
    for (p, s) in simplices.iter().enumerate() {
        if !negative[p] && !died[p] {
            dims[s.dim()].push(Interval {
                birth: s.value(),
                death: max_filtration,
                infinite: true,
            });
        }
    }

    Ok(Barcode::new(max_filtration, dims))
}

/// Symmetric difference of two ascending index lists, written into `out`.
fn symmetric_diff_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}
