//! Free cancellation of `σ σ⁻¹` pairs. Distant crossings commute through the
//! interchange law, so this is free reduction in a partially commutative group.

use super::NormalizeError;
use crate::diagram::{Diagram, Payload, Slice};
use crate::presentation::Presentation;

fn inverse_pair(a: &Slice, b: &Slice) -> bool {
    a.offset == b.offset
        && matches!(
            (&a.gen.payload, &b.gen.payload),
            (Payload::Crossing, Payload::InverseCrossing) | (Payload::InverseCrossing, Payload::Crossing)
        )
}

pub(crate) fn reduce(p: &Presentation, d: &Diagram) -> Result<Diagram, NormalizeError> {
    for s in d.slices() {
        if !matches!(s.gen.payload, Payload::Crossing | Payload::InverseCrossing) {
            return Err(NormalizeError::UnsupportedGenerator {
                strategy: p.strategy().as_str(),
                gen: s.gen.display_name(),
            });
        }
    }
    let mut slices = d.slices().to_vec();
    'outer: loop {
        for i in 0..slices.len() {
            for j in i + 1..slices.len() {
                let blocked = slices[j].offset.abs_diff(slices[i].offset) < 2;
                if blocked {
                    if inverse_pair(&slices[i], &slices[j]) {
                        slices.remove(j);
                        slices.remove(i);
                        continue 'outer;
                    }
                    break;
                }
            }
        }
        break;
    }
    Ok(Diagram::from_slices(d.dom().clone(), slices)?)
}
