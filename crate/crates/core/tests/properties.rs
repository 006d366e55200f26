mod common;

use common::props;

#[test]
fn ring_axioms() {
    props::ring_axioms().unwrap();
}

#[test]
fn delta_leibniz() {
    props::delta_leibniz().unwrap();
}

#[test]
fn reversal() {
    props::reversal().unwrap();
}

#[test]
fn geometric_delta() {
    props::geometric_delta().unwrap();
}

#[test]
fn ab_cd_round_trip() {
    props::ab_cd_round_trip().unwrap();
}

#[test]
fn anti_flip_relations() {
    props::anti_flip_relations().unwrap();
}

#[test]
fn euler_relation() {
    props::euler_relation().unwrap();
}
