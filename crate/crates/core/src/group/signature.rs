use crate::error::Result;
use crate::group::element::GroupElement;
use crate::group::path::GroupPath;
use crate::path::SampledPath;

/// Step-2 signature of the piecewise-linear interpolant, anchored at `t0`.
///
/// Each segment contributes `(Δ, ½ Δ⊗Δ)`; segments are composed left to right
/// with Chen's rule.
pub fn signature2_pl(path: &SampledPath) -> Result<GroupPath> {
    let d = path.dim();
    let n = path.len();
    let mut l1 = vec![0.0; n * d];
    let mut l2 = vec![0.0; n * d * d];
    let mut delta = vec![0.0; d];
    for s in 1..n {
        let (prev, cur) = (path.point(s - 1), path.point(s));
        for j in 0..d {
            delta[j] = cur[j] - prev[j];
        }
        let (head1, tail1) = l1.split_at_mut(s * d);
        let (head2, tail2) = l2.split_at_mut(s * d * d);
        let a1 = &head1[(s - 1) * d..];
        let a2 = &head2[(s - 1) * d * d..];
        for i in 0..d {
            tail1[i] = cur[i] - path.point(0)[i];
            for j in 0..d {
                tail2[i * d + j] = a2[i * d + j] + 0.5 * delta[i] * delta[j] + a1[i] * delta[j];
            }
        }
    }
    GroupPath::new(path.t0(), path.t1(), path.level(), d, l1, l2)
}

/// Signature of a single segment, for reference.
pub fn segment_signature(delta: &[f64]) -> GroupElement {
    GroupElement::segment(delta)
}
