use rand::Rng;

use crate::coloring::repair;
use crate::graph::Graph;
use crate::quantum::LevyParams;
use crate::scalar::Scalar;

use super::{Archive, Nest};

/// One cuckoo generation over every nest.
///
/// Each nest proposes a Lévy-flight offspring. An improving offspring replaces
/// the nest; otherwise the offspring takes a random walk and the walked
/// offspring replaces the nest (or, with `keep_better`, only when it is no
/// worse). The final offspring assignment is offered to the archive.
pub fn cuckoo_step<T: Scalar, R: Rng + ?Sized>(
    g: &Graph,
    nests: &mut [Nest<T>],
    archive: &mut Archive<T>,
    levy: &LevyParams<T>,
    keep_better: bool,
    rng: &mut R,
) {
    for nest in nests.iter_mut() {
        let q_new = nest.q.levy_flight(levy, rng);
        let x_new = repair(&q_new.measure(rng), rng);
        let f_new = g.count_conflicts(x_new.colors());

        let (q_new, x_new, f_new) = if f_new < nest.fitness {
            (q_new, x_new, f_new)
        } else {
            let q_walk = q_new.random_walk(levy, rng);
            let x_walk = repair(&q_walk.measure(rng), rng);
            let f_walk = g.count_conflicts(x_walk.colors());
            (q_walk, x_walk, f_walk)
        };

        archive.offer(&x_new, &q_new, f_new);
        if !keep_better || f_new <= nest.fitness {
            nest.q = q_new;
            nest.set_x(g, x_new, f_new);
        }
    }
}
