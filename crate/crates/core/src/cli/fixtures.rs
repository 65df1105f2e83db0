//! Group description files shipped with the crate.

pub const BUNDLED: &[(&str, &str)] = &[
    ("trivial", include_str!("../../fixtures/trivial.json")),
    ("c2", include_str!("../../fixtures/c2.json")),
    ("c3_1d", include_str!("../../fixtures/c3_1d.json")),
    ("c3reg", include_str!("../../fixtures/c3reg.json")),
    ("c4reg", include_str!("../../fixtures/c4reg.json")),
    ("c3", include_str!("../../fixtures/c3.json")),
    ("c5", include_str!("../../fixtures/c5.json")),
    ("c7", include_str!("../../fixtures/c7.json")),
    ("c9", include_str!("../../fixtures/c9.json")),
    ("q8", include_str!("../../fixtures/q8.json")),
    ("a4perm", include_str!("../../fixtures/a4perm.json")),
    ("s3std", include_str!("../../fixtures/s3std.json")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
