use crate::error::Result;
use crate::game::{Game, PayoffVector, PureProfile};
use crate::numeric::{separate_point, Separation, SeparationCertificate};
use crate::par;

use super::pure_set::{pure_payoff_set, PurePayoffSet};

#[derive(Debug, Clone, PartialEq)]
pub struct HullVertex {
    pub payoff: PayoffVector,
    pub generators: Vec<PureProfile>,
    pub certificate: SeparationCertificate,
}

/// `ext(S_co)`, in the order of the pure payoff set.
#[derive(Debug, Clone, PartialEq)]
pub struct HullVertexSet {
    pub vertices: Vec<HullVertex>,
}

impl HullVertexSet {
    pub fn contains(&self, v: &PayoffVector) -> bool {
        self.vertices.iter().any(|h| &h.payoff == v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Re-verifies every certificate against the full pure set.
    pub fn verify(&self, set: &PurePayoffSet) -> bool {
        self.vertices.iter().all(|h| {
            let others: Vec<Vec<_>> = set
                .payoffs()
                .filter(|p| **p != h.payoff)
                .map(|p| p.0.clone())
                .collect();
            set.find(&h.payoff).is_some() && h.certificate.verify(&h.payoff.0, &others)
        })
    }
}

pub fn hull_vertices(game: &Game) -> Result<HullVertexSet> {
    hull_vertices_of(&pure_payoff_set(game))
}

pub fn hull_vertices_of(set: &PurePayoffSet) -> Result<HullVertexSet> {
    let results = par::map_range(set.len(), |i| {
        let v = &set.points[i].payoff;
        let others: Vec<Vec<_>> = set
            .points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.payoff.0.clone())
            .collect();
        separate_point(&v.0, &others)
    });
    let mut vertices = Vec::new();
    for (point, sep) in set.points.iter().zip(results) {
        if let Separation::Separated(certificate) = sep? {
            vertices.push(HullVertex {
                payoff: point.payoff.clone(),
                generators: point.generators.clone(),
                certificate,
            });
        }
    }
    Ok(HullVertexSet { vertices })
}

/// Hull polygon of planar vertices in counterclockwise order, for drawing.
pub fn planar_polygon(hull: &HullVertexSet) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = hull
        .vertices
        .iter()
        .map(|h| {
            let f = h.payoff.to_f64();
            [f[0], f[1]]
        })
        .collect();
    if pts.len() < 3 {
        return pts;
    }
    let k = pts.len() as f64;
    let cx = pts.iter().map(|p| p[0]).sum::<f64>() / k;
    let cy = pts.iter().map(|p| p[1]).sum::<f64>() / k;
    pts.sort_by(|a, b| {
        let ta = (a[1] - cy).atan2(a[0] - cx);
        let tb = (b[1] - cy).atan2(b[0] - cx);
        ta.total_cmp(&tb)
    });
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn vertex_set(g: &Game) -> Vec<PayoffVector> {
        let mut v: Vec<_> = hull_vertices(g)
            .unwrap()
            .vertices
            .into_iter()
            .map(|h| h.payoff)
            .collect();
        v.sort();
        v
    }

    fn pts(list: &[[i64; 2]]) -> Vec<PayoffVector> {
        let mut v: Vec<_> = list.iter().map(|p| PayoffVector::from_i64(p)).collect();
        v.sort();
        v
    }

    #[test]
    fn example_hulls() {
        assert_eq!(
            vertex_set(&fixtures::example2()),
            pts(&[[0, 0], [3, 0], [3, 2], [0, 2]])
        );
        assert_eq!(
            vertex_set(&fixtures::example1()),
            pts(&[[0, 1], [5, 2], [2, 5], [1, 0]])
        );
        let ex4 = vertex_set(&fixtures::example4());
        assert!(!ex4.contains(&PayoffVector::from_i64(&[4, 4])));
    }

    #[test]
    fn single_point_game() {
        let g = Game::from_i64(vec![1, 1], &[&[3, 4]]).unwrap();
        assert_eq!(vertex_set(&g), pts(&[[3, 4]]));
    }

    #[test]
    fn certificates_reverify() {
        for (_, g) in fixtures::all() {
            let set = pure_payoff_set(&g);
            let hull = hull_vertices_of(&set).unwrap();
            assert!(!hull.is_empty());
            assert!(hull.verify(&set));
        }
    }

    #[test]
    fn polygon_is_counterclockwise() {
        let hull = hull_vertices(&fixtures::example2()).unwrap();
        let poly = planar_polygon(&hull);
        let area: f64 = (0..poly.len())
            .map(|i| {
                let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
                a[0] * b[1] - a[1] * b[0]
            })
            .sum();
        assert_eq!(area / 2.0, 6.0);
    }
}
