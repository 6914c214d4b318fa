//! Executable form of the engine's loop invariants.
//!
//! The engine never stores per-element origins, so these checks need a shadow
//! source of truth: the caller supplies `origin_of`, a map from key to the
//! origin it had in the current inner merge. Test harnesses rebuild that map
//! from the window contents each time an inner pass starts (see
//! [`MergeObserver::merge_started`](super::MergeObserver::merge_started)).
//!
//! Keys must be distinct: the stable order between equal same-origin keys is
//! not recoverable from origins alone. Equal keys of different origins are
//! ordered left before right, matching the merge's tie rule.

use super::engine::{Direction, MergeState, Origin};

/// `x` precedes `y` in the stable output order.
fn before<T, F>(x: &T, ox: Origin, y: &T, oy: Origin, less: &mut F) -> bool
where
    F: FnMut(&T, &T) -> bool,
{
    if less(x, y) {
        true
    } else if less(y, x) {
        false
    } else {
        // Tie: left origin wins; same-origin ties are assumed in order.
        !(ox == Origin::Right && oy == Origin::Left)
    }
}

/// Check the six loop invariants against a snapshot.
///
/// Returns the name and story of the first violated invariant. The labels:
///
/// * A0: the buffer is non-empty.
/// * A1: the sorted region is ordered and none of its elements belongs after
///   any buffer or shuffled element.
/// * A2: the buffer is ordered and single-origin, matching the state's flag.
/// * A3: the shuffled region is 2-ordered and its origins alternate by
///   position, starting (nearest the buffer) with the complement origin.
/// * A4: every buffer element precedes every buffer-origin shuffled element.
/// * A5: the buffer head and the nearest shuffled element differ in origin.
pub fn check_invariants<T, F, G>(
    a: &[T],
    state: &MergeState,
    origin_of: G,
    less: &mut F,
) -> Result<(), String>
where
    F: FnMut(&T, &T) -> bool,
    G: Fn(&T) -> Origin,
{
    let MergeState {
        sorted,
        buffer,
        shuffled,
        origin,
        direction,
        ..
    } = *state;
    let fwd = direction == Direction::Forward;

    if buffer.is_empty() {
        return Err("A0: buffer is empty".into());
    }

    let s = &a[sorted.range()];
    let p = &a[buffer.range()];
    let sh = &a[shuffled.range()];

    let tag = |x: &T| origin_of(x);
    let bef = |x: &T, y: &T, less: &mut F| before(x, tag(x), y, tag(y), less);

    // A1: the sorted region is ordered...
    for w in s.windows(2) {
        if !bef(&w[0], &w[1], less) {
            return Err("A1: sorted region out of order".into());
        }
    }
    // ...and sits entirely before (forward) or after (backward) the rest.
    // The region is ordered, so comparing its extreme element suffices.
    if let Some(edge) = if fwd { s.last() } else { s.first() } {
        for x in p.iter().chain(sh.iter()) {
            let ok = if fwd {
                bef(edge, x, less)
            } else {
                bef(x, edge, less)
            };
            if !ok {
                return Err("A1: sorted region not separated from the rest".into());
            }
        }
    }

    // A2: buffer ordered, single origin.
    for w in p.windows(2) {
        if !bef(&w[0], &w[1], less) {
            return Err("A2: buffer out of order".into());
        }
    }
    if p.iter().any(|x| tag(x) != origin) {
        return Err("A2: buffer element with foreign origin".into());
    }

    // A3: shuffled region 2-ordered, origins alternating by position. The
    // parity is anchored at the end nearest the buffer, which must hold the
    // complement origin.
    for parity in 0..2usize {
        let mut it = sh.iter().skip(parity).step_by(2);
        if let Some(mut prev) = it.next() {
            for x in it {
                if !bef(prev, x, less) {
                    return Err("A3: shuffled region not 2-ordered".into());
                }
                prev = x;
            }
        }
    }
    for (idx, x) in sh.iter().enumerate() {
        let offset_from_buffer = if fwd { idx } else { sh.len() - 1 - idx };
        let want = if offset_from_buffer % 2 == 0 {
            origin.complement()
        } else {
            origin
        };
        if tag(x) != want {
            return Err("A3: shuffled origins out of phase".into());
        }
    }

    // A4: buffer elements precede (forward) or follow (backward) every
    // buffer-origin shuffled element. The buffer is ordered, so its extreme
    // element suffices.
    if let Some(edge) = if fwd { p.last() } else { p.first() } {
        for x in sh.iter().filter(|x| tag(x) == origin) {
            let ok = if fwd {
                bef(edge, x, less)
            } else {
                bef(x, edge, less)
            };
            if !ok {
                return Err("A4: buffer not before its same-origin shuffled elements".into());
            }
        }
    }

    // A5: head of the buffer and nearest shuffled element differ in origin.
    if !sh.is_empty() {
        let nearest = if fwd { &sh[0] } else { &sh[sh.len() - 1] };
        if tag(nearest) == origin {
            return Err("A5: buffer and shuffled region heads share an origin".into());
        }
    }

    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::span::Span;

    fn state(
        sorted: Span,
        buffer: Span,
        shuffled: Span,
        origin: Origin,
        direction: Direction,
    ) -> MergeState {
        let lo = if direction == Direction::Forward {
            sorted.start
        } else {
            shuffled.start
        };
        let hi = if direction == Direction::Forward {
            shuffled.end()
        } else {
            sorted.end()
        };
        MergeState {
            window: Span::from_range(lo..hi),
            sorted,
            buffer,
            shuffled,
            origin,
            direction,
        }
    }

    /// Origin by key parity: evens left, odds right.
    fn parity_origin(x: &i32) -> Origin {
        if x % 2 == 0 {
            Origin::Left
        } else {
            Origin::Right
        }
    }

    #[test]
    fn accepts_a_freshly_interleaved_window() {
        // Left run [2, 4, 6] (even keys), right run [1, 3, 5]; interleaved
        // window with the buffer holding the fixed first element.
        let a = [2, 1, 4, 3, 6, 5];
        let st = state(
            Span::new(0, 0),
            Span::new(0, 1),
            Span::new(1, 5),
            Origin::Left,
            Direction::Forward,
        );
        let mut less = |x: &i32, y: &i32| x < y;
        assert_eq!(check_invariants(&a, &st, parity_origin, &mut less), Ok(()));
    }

    #[test]
    fn rejects_a_stranded_small_element() {
        // Sorted [2, 4, 8] with a 5 still waiting in the shuffled region:
        // exactly the damage the truncating scan variant causes.
        let a = [2, 4, 8, 10, 12, 5];
        let origin = |x: &i32| {
            if *x < 5 || *x >= 10 {
                Origin::Left
            } else {
                Origin::Right
            }
        };
        let st = state(
            Span::new(0, 3),
            Span::new(3, 2),
            Span::new(5, 1),
            Origin::Left,
            Direction::Forward,
        );
        let mut less = |x: &i32, y: &i32| x < y;
        let err = check_invariants(&a, &st, origin, &mut less).unwrap_err();
        assert!(err.starts_with("A1"), "{err}");
    }

    #[test]
    fn rejects_an_empty_buffer() {
        let a = [1, 2];
        let st = state(
            Span::new(0, 1),
            Span::new(1, 0),
            Span::new(1, 1),
            Origin::Left,
            Direction::Forward,
        );
        let mut less = |x: &i32, y: &i32| x < y;
        let err = check_invariants(&a, &st, parity_origin, &mut less).unwrap_err();
        assert!(err.starts_with("A0"), "{err}");
    }
}
