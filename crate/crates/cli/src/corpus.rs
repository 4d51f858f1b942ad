//! Example programs shipped with the binary.

/// `(file name, source)` for every corpus program.
pub const CORPUS: &[(&str, &str)] = &[
    ("builtins.pa", include_str!("../corpus/builtins.pa")),
    ("definitions.pa", include_str!("../corpus/definitions.pa")),
    ("higher_order.pa", include_str!("../corpus/higher_order.pa")),
    ("jordan_schwinger.pa", include_str!("../corpus/jordan_schwinger.pa")),
    ("k_type.pa", include_str!("../corpus/k_type.pa")),
    ("nested.pa", include_str!("../corpus/nested.pa")),
    ("quadratic_boson.pa", include_str!("../corpus/quadratic_boson.pa")),
    ("quadratic_classes.pa", include_str!("../corpus/quadratic_classes.pa")),
    ("recenter.pa", include_str!("../corpus/recenter.pa")),
    ("su11_su11.pa", include_str!("../corpus/su11_su11.pa")),
    ("su2_boson.pa", include_str!("../corpus/su2_boson.pa")),
    ("su2_su11.pa", include_str!("../corpus/su2_su11.pa")),
];
