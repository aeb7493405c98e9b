#![allow(dead_code)]

use pachner4::field::{
    random_assignment, Field, PrimeField, RationalField, SampleMode, DEFAULT_PRIME,
};
use pachner4::grassmann::{Algebra, GeneratorTable};
use pachner4::pachner::{Cluster, PachnerMove};
use pachner4::Vertex;

pub fn prime_field(vertices: impl IntoIterator<Item = Vertex>, seed: u64) -> PrimeField {
    let z = random_assignment(vertices, seed, SampleMode::Prime(DEFAULT_PRIME)).unwrap();
    PrimeField::new(DEFAULT_PRIME, &z).unwrap()
}

pub fn rational_field(vertices: impl IntoIterator<Item = Vertex>, seed: u64) -> RationalField {
    RationalField::new(random_assignment(vertices, seed, SampleMode::Rational).unwrap())
}

pub fn cluster(lists: &[[Vertex; 5]]) -> Cluster {
    Cluster::from_vertex_lists(lists).unwrap()
}

pub fn cluster_algebra<F: Field>(c: &Cluster, field: F) -> Algebra<F> {
    Algebra::new(field, c.generator_table().unwrap())
}

pub fn move_algebra<F: Field>(mv: &PachnerMove, field: F) -> Algebra<F> {
    mv.algebra(field).unwrap()
}

pub fn table_of(lists: &[[Vertex; 5]]) -> GeneratorTable {
    cluster(lists).generator_table().unwrap()
}
