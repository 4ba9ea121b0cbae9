//! Exact combinatorics behind wonderful and stacky compactifications of
//! semisimple groups and their loop-group analogues.
//!
//! * [`lattice`]: integer/rational linear algebra, Smith normal form, cones and fans.
//! * [`root`]: finite root data, Weyl groups, chambers, the basic form, weight multiplicities.
//! * [`affine`]: alcoves, the affine Weyl group, affine Dynkin diagrams and parahoric Levi data.
//! * [`fans`]: stacky fans of Weyl chambers, the cone `C_Δ`, orbit posets and Picard data.
//! * [`voronoi`]: quadratic forms on cocharacter lattices, Voronoi/Delaunay cells and the loop-torus fan.
//!
//! All arithmetic is exact.

pub mod affine;
pub mod fans;
pub mod lattice;
pub mod root;
pub mod voronoi;
