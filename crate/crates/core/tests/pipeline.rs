//! End-to-end checks through the public API, crossing module boundaries.

use wonderfan::affine::AffineRootDatum;
use wonderfan::fans::{
    alcove_ray_map, check_embedding_fan, orbit_stabilizer_descriptor, Datum, EmbeddingDescriptor,
    EmbeddingFlavor,
};
use wonderfan::lattice::rational::rat;
use wonderfan::lattice::{cokernel, Fan};
use wonderfan::root::RootDatum;
use wonderfan::voronoi::{delaunay_cell, lt_fan, voronoi_cell};

const TYPES: [&str; 6] = ["A2", "B2", "G2", "A3", "B3", "C3"];

#[test]
fn adjoint_representation_has_dimension_rank_plus_roots() {
    for label in TYPES {
        let rd = RootDatum::parse(label, "sc").unwrap();
        let theta = rd.highest_root().unwrap();
        let table = rd.freudenthal_multiplicities(&theta).unwrap();
        let expected = rd.rank() + 2 * rd.positive_roots().len();
        assert_eq!(table.dimension() as usize, expected, "{label}");
        assert_eq!(table.multiplicity(&vec![0; rd.rank()]) as usize, rd.rank());
    }
}

#[test]
fn stabilizer_levi_matches_parahoric_levi() {
    for label in TYPES {
        let ard = AffineRootDatum::parse(label, "sc").unwrap();
        for j in 0..=ard.rank() {
            let d = orbit_stabilizer_descriptor(Datum::Affine(&ard), &[j]).unwrap();
            assert_eq!(
                d.levi_type,
                ard.parahoric_levi_type(j).unwrap().to_string(),
                "{label} node {j}"
            );
        }
    }
}

#[test]
fn negative_chamber_faces_form_a_valid_adjoint_embedding_fan() {
    for label in TYPES {
        let rd = RootDatum::parse(label, "ad").unwrap();
        let neg = rd
            .dominant_chamber()
            .image(&wonderfan::lattice::IntMatrix::identity(rd.rank()).scale(-1))
            .unwrap();
        let fan = Fan::new(rd.rank(), neg.faces()).unwrap();
        let desc = EmbeddingDescriptor {
            fan,
            flavor: EmbeddingFlavor::Adjoint,
            affine: false,
        };
        let report = check_embedding_fan(&desc, &rd).unwrap();
        assert!(report.valid, "{label}: {:?}", report.violation);
    }
}

#[test]
fn alcove_rays_have_finite_cokernel() {
    for label in TYPES {
        let ard = AffineRootDatum::parse(label, "sc").unwrap();
        let c = cokernel(&alcove_ray_map(&ard));
        assert_eq!(c.free_rank, 0, "{label}");
    }
    let a2 = AffineRootDatum::parse("A2", "sc").unwrap();
    assert_eq!(
        cokernel(&alcove_ray_map(&a2)).torsion.invariant_factors(),
        [3]
    );
}

#[test]
fn lt_fan_of_a_basic_form_is_a_fan() {
    for label in ["A2", "B2", "G2"] {
        let q = RootDatum::parse(label, "sc").unwrap().basic_form().unwrap();
        let lt = lt_fan(&q, 1).unwrap();
        let cones: Vec<_> = lt.fan.maximal_cones().into_iter().cloned().collect();
        assert_eq!(cones.len(), 9, "{label}");
        Fan::new(3, cones).expect("cones meet in common faces");
        let origin_cell = lt
            .fan
            .maximal_cones()
            .into_iter()
            .filter(|c| c.contains(&[rat(0), rat(0), rat(1)]))
            .count();
        assert_eq!(origin_cell, 1, "{label}");
    }
}

#[test]
fn hexagonal_cell_vertices_are_deep_holes() {
    let q = RootDatum::parse("A2", "sc").unwrap().basic_form().unwrap();
    let cell = voronoi_cell(&q, &[0, 0]).unwrap();
    let verts = cell.vertices.clone().unwrap();
    assert_eq!(verts.len(), 6);
    for v in &verts {
        let d = delaunay_cell(&q, v).unwrap();
        assert_eq!(d.vertices.len(), 3, "{v:?}");
        assert!(d.vertices.contains(&vec![0, 0]));
    }
}
