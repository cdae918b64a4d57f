//! Exact values of `Z_{p,n}(J,K)` where one is known.

use num_complex::Complex64;

use crate::error::Result;
use crate::haar_mc::Group;
use crate::sources::SourceMatrices;
use crate::su_shifted::eval_z_shifted;
use crate::weingarten::eval_znn;

/// Which closed form, if any, gives `Z_{p,n}` on the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    /// forced to zero by the centre symmetry
    Vanishing,
    /// `p = n < N`
    Balanced,
    /// `p = n + N`, `n < N`, `SU(N)` only
    Shifted,
    Unsupported,
}

pub fn classify(p: usize, n: usize, dim: usize, group: Group) -> Sector {
    let (pi, ni, d) = (p as i64, n as i64, dim as i64);
    let vanishes = match group {
        Group::Unitary => p != n,
        Group::SpecialUnitary => (pi - ni).rem_euclid(d) != 0,
    };
    if vanishes {
        Sector::Vanishing
    } else if p == n && n < dim {
        Sector::Balanced
    } else if group == Group::SpecialUnitary && p == n + dim && n < dim {
        Sector::Shifted
    } else {
        Sector::Unsupported
    }
}

/// `Some(Z_{p,n}(J,K))` in the sectors with a closed form, `None` otherwise.
pub fn exact_z(p: usize, n: usize, src: &SourceMatrices, group: Group) -> Result<Option<Complex64>> {
    Ok(match classify(p, n, src.dim(), group) {
        Sector::Vanishing => Some(Complex64::new(0.0, 0.0)),
        Sector::Balanced => Some(eval_znn(n, src)?),
        Sector::Shifted => Some(eval_z_shifted(n, src)?),
        Sector::Unsupported => None,
    })
}
