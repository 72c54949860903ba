//! Binary morphology with Euclidean disk structuring elements, and connected
//! component labelling.

use crate::grid::BinaryMask;

fn disk_offsets(radius: f64) -> Vec<(isize, isize)> {
    let k = radius.floor() as isize;
    let r2 = radius * radius;
    let mut out = Vec::new();
    for dr in -k..=k {
        for dc in -k..=k {
            if ((dr * dr + dc * dc) as f64) <= r2 {
                out.push((dr, dc));
            }
        }
    }
    out
}

/// A pixel survives when every pixel of the disk around it is set.
/// Pixels outside the canvas count as unset.
pub fn erode(mask: &BinaryMask, radius: f64) -> BinaryMask {
    let offsets = disk_offsets(radius);
    let (w, h) = mask.dims();
    BinaryMask::from_fn(w, h, |r, c| {
        offsets.iter().all(|&(dr, dc)| {
            let (rr, cc) = (r as isize + dr, c as isize + dc);
            rr >= 0
                && cc >= 0
                && (rr as usize) < h
                && (cc as usize) < w
                && mask.get(rr as usize, cc as usize)
        })
    })
}

/// A pixel is set when any pixel of the disk around it is set.
pub fn dilate(mask: &BinaryMask, radius: f64) -> BinaryMask {
    let offsets = disk_offsets(radius);
    let (w, h) = mask.dims();
    BinaryMask::from_fn(w, h, |r, c| {
        offsets.iter().any(|&(dr, dc)| {
            let (rr, cc) = (r as isize + dr, c as isize + dc);
            rr >= 0
                && cc >= 0
                && (rr as usize) < h
                && (cc as usize) < w
                && mask.get(rr as usize, cc as usize)
        })
    })
}

/// 4-connected component labels (0 = background, components numbered from 1)
/// and the number of components.
pub fn connected_components(mask: &BinaryMask) -> (Vec<usize>, usize) {
    let (w, h) = mask.dims();
    let mut labels = vec![0usize; w * h];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..w * h {
        if mask.data()[start] == 0 || labels[start] != 0 {
            continue;
        }
        next += 1;
        labels[start] = next;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (r, c) = (i / w, i % w);
            let mut visit = |j: usize| {
                if mask.data()[j] != 0 && labels[j] == 0 {
                    labels[j] = next;
                    stack.push(j);
                }
            };
            if r > 0 {
                visit(i - w);
            }
            if r + 1 < h {
                visit(i + w);
            }
            if c > 0 {
                visit(i - 1);
            }
            if c + 1 < w {
                visit(i + 1);
            }
        }
    }
    (labels, next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erode_then_dilate_square() {
        let m = BinaryMask::from_fn(20, 20, |r, c| (5..15).contains(&r) && (5..15).contains(&c));
        let e = erode(&m, 1.0);
        assert_eq!(e.count(), 64);
        let d = dilate(&e, 1.0);
        // the opening of a square by a cross loses only the corners
        assert_eq!(d.count(), 100 - 4);
    }

    #[test]
    fn components_counted() {
        let m = BinaryMask::from_fn(10, 10, |r, c| (r < 3 && c < 3) || (r > 6 && c > 6) || (r == 0 && c == 9));
        let (labels, n) = connected_components(&m);
        assert_eq!(n, 3);
        assert_eq!(labels[0], 1);
        assert_eq!(labels[99], labels[77]);
    }

    #[test]
    fn zero_radius_is_identity() {
        let m = BinaryMask::from_fn(6, 6, |r, c| r * c % 4 == 1);
        assert_eq!(erode(&m, 0.0), m);
        assert_eq!(dilate(&m, 0.0), m);
    }
}
