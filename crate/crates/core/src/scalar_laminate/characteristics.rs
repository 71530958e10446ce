use super::medium::TemporalLaminate;
use super::split::split_weights;
use crate::diagram::{CharacteristicDiagram, Segment};
use crate::wave_terms::Direction;

/// Amplitudes below this are drawn as non-carrying rays.
const CARRYING_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug)]
struct Ray {
    x: f64,
    direction: Direction,
    amplitude: f64,
}

/// Ray diagram of the field pattern grown from point sources at `seeds`.
///
/// Each seed emits a pair of half-amplitude rays; at every interface each
/// ray branches into a transmitted and a reversed ray weighted as in
/// [`split_field`](super::split_field). Coincident rays are merged with
/// their amplitudes summed. The diagram ends one layer past the last
/// requested interface.
pub fn characteristics(
    lam: &TemporalLaminate,
    seeds: &[f64],
    n_interfaces: usize,
) -> CharacteristicDiagram {
    let interfaces = lam.first_interfaces(n_interfaces);
    let mut rays: Vec<Ray> = seeds
        .iter()
        .flat_map(|&x| {
            [Direction::Forward, Direction::Backward].map(|direction| Ray {
                x,
                direction,
                amplitude: 0.5,
            })
        })
        .collect();
    rays = merge(rays);

    let mut diagram = CharacteristicDiagram::default();
    let x_hi = seeds.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let x_lo = seeds.iter().copied().fold(f64::INFINITY, f64::min);
    if seeds.is_empty() {
        return diagram;
    }
    diagram.edge_right.push([x_hi, 0.0]);
    diagram.edge_left.push([x_lo, 0.0]);

    let mut t_start = 0.0;
    let mut phase = lam.initial_phase();
    for k in 0..=interfaces.len() {
        let t_end = match interfaces.get(k) {
            Some(i) => i.time,
            None => {
                // one further layer so the last branching is visible
                let next = lam.first_interfaces(interfaces.len() + 1);
                match next.get(interfaces.len()) {
                    Some(i) => i.time,
                    None => t_start + lam.layers().last().map_or(1.0, |l| l.duration),
                }
            }
        };
        let c = phase.speed();
        let mut ends = Vec::with_capacity(rays.len());
        for ray in &rays {
            let x1 = ray.x + ray.direction.sign() * c * (t_end - t_start);
            let carrying = ray.amplitude.abs() > CARRYING_TOLERANCE;
            diagram.segments.push(Segment {
                x0: ray.x,
                t0: t_start,
                x1,
                t1: t_end,
                speed: c,
                direction: ray.direction,
                amplitude: ray.amplitude,
                carrying,
            });
            ends.push((x1, carrying));
        }
        let carrying_x = ends.iter().filter(|e| e.1).map(|e| e.0);
        let right = carrying_x.clone().fold(f64::NEG_INFINITY, f64::max);
        let left = carrying_x.fold(f64::INFINITY, f64::min);
        if right.is_finite() {
            diagram.edge_right.push([right, t_end]);
            diagram.edge_left.push([left, t_end]);
        }

        let Some(interface) = interfaces.get(k) else {
            break;
        };
        diagram.interfaces.push(interface.time);
        let (kept, reversed) = split_weights(&interface.from, &interface.to);
        let mut next = Vec::with_capacity(2 * rays.len());
        for (ray, (x1, _)) in rays.iter().zip(&ends) {
            next.push(Ray {
                x: *x1,
                direction: ray.direction,
                amplitude: ray.amplitude * kept,
            });
            next.push(Ray {
                x: *x1,
                direction: ray.direction.flip(),
                amplitude: ray.amplitude * reversed,
            });
        }
        rays = merge(next);
        t_start = t_end;
        phase = interface.to;
    }
    diagram
}

fn merge(mut rays: Vec<Ray>) -> Vec<Ray> {
    rays.sort_by(|a, b| a.direction.cmp(&b.direction).then(a.x.total_cmp(&b.x)));
    let mut out: Vec<Ray> = Vec::with_capacity(rays.len());
    for ray in rays {
        match out.last_mut() {
            Some(last)
                if last.direction == ray.direction
                    && (last.x - ray.x).abs() <= 1e-12 * last.x.abs().max(1.0) =>
            {
                last.amplitude += ray.amplitude;
            }
            _ => out.push(ray),
        }
    }
    out
}
