use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Tolerance on `T_i c_i = d` for laminates built with the equal-distance flag.
pub const EQUAL_DISTANCE_TOLERANCE: f64 = 1e-12;

/// One temporal layer's stiffness `alpha` and density `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MediumPhase {
    pub alpha: f64,
    pub beta: f64,
}

impl MediumPhase {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Ok(MediumPhase {
            alpha: require_positive("alpha", alpha)?,
            beta: require_positive("beta", beta)?,
        })
    }

    /// Phase with the given wave speed and impedance.
    pub fn from_speed_impedance(speed: f64, impedance: f64) -> Result<Self> {
        require_positive("speed", speed)?;
        require_positive("impedance", impedance)?;
        Self::new(impedance * speed, impedance / speed)
    }

    pub fn speed(&self) -> f64 {
        (self.alpha / self.beta).sqrt()
    }

    pub fn impedance(&self) -> f64 {
        (self.alpha * self.beta).sqrt()
    }

    /// `alpha * beta`, the squared impedance.
    pub fn impedance_sq(&self) -> f64 {
        self.alpha * self.beta
    }
}

/// A phase held for a finite duration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub phase: MediumPhase,
    pub duration: f64,
}

/// A coefficient switch at time `time`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interface {
    pub time: f64,
    pub from: MediumPhase,
    pub to: MediumPhase,
}

/// Ordered schedule of phases. A periodic laminate repeats its layers
/// forever; a non-periodic one keeps its last phase after the schedule ends.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemporalLaminate {
    layers: Vec<Layer>,
    periodic: bool,
    equal_distance: bool,
}

impl TemporalLaminate {
    pub fn new(layers: Vec<Layer>, periodic: bool) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::invalid("layers", "at least one phase required"));
        }
        for layer in &layers {
            require_positive("duration", layer.duration)?;
        }
        Ok(TemporalLaminate {
            layers,
            periodic,
            equal_distance: false,
        })
    }

    /// A medium that never switches.
    pub fn homogeneous(phase: MediumPhase) -> Self {
        TemporalLaminate {
            layers: vec![Layer {
                phase,
                duration: 1.0,
            }],
            periodic: false,
            equal_distance: false,
        }
    }

    /// Periodic two-phase laminate.
    pub fn two_phase(p1: MediumPhase, t1: f64, p2: MediumPhase, t2: f64) -> Result<Self> {
        Self::new(
            vec![
                Layer {
                    phase: p1,
                    duration: t1,
                },
                Layer {
                    phase: p2,
                    duration: t2,
                },
            ],
            true,
        )
    }

    /// Periodic two-phase laminate whose durations make each phase cover the
    /// same distance `d`.
    pub fn equal_distance(p1: MediumPhase, p2: MediumPhase, d: f64) -> Result<Self> {
        require_positive("d", d)?;
        Self::two_phase(p1, d / p1.speed(), p2, d / p2.speed())?.require_equal_distance()
    }

    /// Sets the equal-distance flag after checking `T_i c_i` agree.
    pub fn require_equal_distance(mut self) -> Result<Self> {
        let distances = self.layer_distances();
        let d = distances[0];
        for &di in &distances[1..] {
            if (di - d).abs() > EQUAL_DISTANCE_TOLERANCE * d.max(1.0) {
                return Err(Error::invalid(
                    "durations",
                    format!("equal-distance condition violated: {d} vs {di}"),
                ));
            }
        }
        self.equal_distance = true;
        Ok(self)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn is_equal_distance(&self) -> bool {
        self.equal_distance
    }

    pub fn period(&self) -> f64 {
        self.layers.iter().map(|l| l.duration).sum()
    }

    /// `c_i T_i` for every layer.
    pub fn layer_distances(&self) -> Vec<f64> {
        self.layers
            .iter()
            .map(|l| l.phase.speed() * l.duration)
            .collect()
    }

    pub fn initial_phase(&self) -> MediumPhase {
        self.layers[0].phase
    }

    /// Interfaces at times `<= t_end`, in order.
    pub fn interfaces(&self, t_end: f64) -> Vec<Interface> {
        self.interface_iter().take_while(|i| i.time <= t_end).collect()
    }

    /// The first `n` interfaces (fewer if the schedule is finite).
    pub fn first_interfaces(&self, n: usize) -> Vec<Interface> {
        self.interface_iter().take(n).collect()
    }

    fn interface_iter(&self) -> impl Iterator<Item = Interface> + '_ {
        let n = self.layers.len();
        let period = self.period();
        let prefix: Vec<f64> = self
            .layers
            .iter()
            .scan(0.0, |acc, l| {
                *acc += l.duration;
                Some(*acc)
            })
            .collect();
        let limit = if self.periodic && n > 1 {
            usize::MAX
        } else {
            n.saturating_sub(1)
        };
        (0..limit).map(move |k| {
            let cycle = k / n;
            let j = k % n;
            Interface {
                time: cycle as f64 * period + prefix[j],
                from: self.layers[j].phase,
                to: self.layers[(j + 1) % n].phase,
            }
        })
    }

    /// Layer pieces covering `[0, t)`: whole layers, then a partial one.
    pub fn pieces_until(&self, t: f64) -> Vec<Layer> {
        let mut out = Vec::new();
        let mut start = 0.0;
        for interface in self.interface_iter() {
            if interface.time >= t {
                break;
            }
            out.push(Layer {
                phase: interface.from,
                duration: interface.time - start,
            });
            start = interface.time;
        }
        if t > start {
            out.push(Layer {
                phase: self.phase_at(start),
                duration: t - start,
            });
        }
        out
    }

    /// Phase active just after time `t`.
    pub fn phase_at(&self, t: f64) -> MediumPhase {
        let mut phase = self.initial_phase();
        for interface in self.interface_iter() {
            if interface.time > t {
                break;
            }
            phase = interface.to;
        }
        phase
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> TemporalLaminate {
        let p1 = MediumPhase::new(1.0, 1.0).unwrap();
        let p2 = MediumPhase::new(4.0, 1.0).unwrap();
        TemporalLaminate::two_phase(p1, 1.0, p2, 0.5).unwrap()
    }

    #[test]
    fn phase_derived_quantities() {
        let p = MediumPhase::new(4.0, 1.0).unwrap();
        assert_eq!(p.speed(), 2.0);
        assert_eq!(p.impedance(), 2.0);
        let q = MediumPhase::from_speed_impedance(2.0, 3.0).unwrap();
        assert!((q.speed() - 2.0).abs() < 1e-15);
        assert!((q.impedance() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(MediumPhase::new(-1.0, 1.0).is_err());
        assert!(MediumPhase::new(1.0, 0.0).is_err());
        assert!(MediumPhase::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn interface_times_are_prefix_sums() {
        let lam = fig2();
        let times: Vec<f64> = lam.interfaces(4.0).iter().map(|i| i.time).collect();
        assert_eq!(times, vec![1.0, 1.5, 2.5, 3.0, 4.0]);
        assert_eq!(lam.phase_at(1.2).alpha, 4.0);
        assert_eq!(lam.phase_at(0.2).alpha, 1.0);
        assert!(lam.is_equal_distance() || lam.clone().require_equal_distance().is_ok());
    }

    #[test]
    fn homogeneous_has_no_interfaces() {
        let lam = TemporalLaminate::homogeneous(MediumPhase::new(2.0, 1.0).unwrap());
        assert!(lam.interfaces(100.0).is_empty());
        assert_eq!(lam.pieces_until(3.0).len(), 1);
        assert_eq!(lam.pieces_until(3.0)[0].duration, 3.0);
    }

    #[test]
    fn pieces_cover_the_interval() {
        let lam = fig2();
        let pieces = lam.pieces_until(2.2);
        let total: f64 = pieces.iter().map(|p| p.duration).sum();
        assert!((total - 2.2).abs() < 1e-15);
        assert_eq!(pieces.len(), 3);
        assert_eq!(pieces[1].phase.alpha, 4.0);
    }

    #[test]
    fn equal_distance_flag_is_checked() {
        let p1 = MediumPhase::new(1.0, 1.0).unwrap();
        let p2 = MediumPhase::new(4.0, 1.0).unwrap();
        assert!(TemporalLaminate::two_phase(p1, 1.0, p2, 0.6)
            .unwrap()
            .require_equal_distance()
            .is_err());
        let lam = TemporalLaminate::equal_distance(p1, p2, 1.0).unwrap();
        assert!(lam.is_equal_distance());
        assert_eq!(lam.layers()[1].duration, 0.5);
    }
}
