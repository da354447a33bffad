//! The keyword registry and the three culling steps.
//!
//!     cargo run --example keyword_culling

use std::collections::BTreeMap;

use patent_interactions::keywords::{
    compute_relevancy, default_registry, CullThresholds, RelevancyAnnotation,
};

fn main() -> patent_interactions::Result<()> {
    let registry = default_registry();
    for k in &registry.keywords {
        println!(
            "{:<12} root {:<12} mean relevancy {:.3}  {:?}",
            k.label,
            k.root,
            k.mean_relevancy().unwrap_or(f64::NAN),
            k.status
        );
    }

    // 7 of 8 hand-checked uses of "overcome" in one domain signal an interaction
    let ann = RelevancyAnnotation {
        label: "overcome".into(),
        domain: "Batteries".into(),
        true_positive_count: 7,
        total_count: 8,
    };
    println!("\nrelevancy of one annotation: {}", compute_relevancy(&ann)?);

    // made-up totals: "overcome" rare, "prevent" common but confined to few domains
    let totals: BTreeMap<String, u64> = registry
        .keywords
        .iter()
        .map(|k| (k.label.clone(), if k.label == "overcome" { 40 } else { 500 }))
        .collect();
    let per_domain: BTreeMap<String, BTreeMap<String, u64>> = registry
        .keywords
        .iter()
        .map(|k| {
            let used = if k.label == "prevent" { 10 } else { 27 };
            let by_domain = (0..27).map(|i| (format!("D{i}"), u64::from(i < used))).collect();
            (k.label.clone(), by_domain)
        })
        .collect();
    let culled = registry.apply_culls(&totals, &per_domain, &CullThresholds::default());
    println!("\nafter culling with made-up counts:");
    for k in &culled.keywords {
        println!("  {:<12} {:?}", k.label, k.status);
    }
    Ok(())
}
