//! Graphviz rendering for machines. Display-only: nothing parses this back.

use cfgames_core::{CounterMachine, CounterTest};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Edge caption: the letter (or λ), then `tests/updates` when counters exist.
fn edge_label(m: &CounterMachine, rule: &cfgames_core::Rule) -> String {
    let mut label = match &rule.label {
        Some(l) => l.as_str().to_string(),
        None => "λ".to_string(),
    };
    if m.k() > 0 {
        let tests: Vec<&str> = rule
            .tests
            .iter()
            .map(|t| if *t == CounterTest::Zero { "z" } else { "p" })
            .collect();
        let updates: Vec<String> = rule
            .updates
            .iter()
            .map(|&u| match u {
                1 => "+1".to_string(),
                other => other.to_string(),
            })
            .collect();
        label.push_str(&format!(" {}/{}", tests.join(","), updates.join(",")));
    }
    label
}

pub fn machine_to_dot(m: &CounterMachine) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", quote(m.name())));
    out.push_str("  rankdir=LR;\n");
    out.push_str("  __start [shape=point, label=\"\"];\n");
    for i in 0..m.state_count() {
        let shape = if m.is_accepting(i) { "doublecircle" } else { "circle" };
        out.push_str(&format!("  {} [shape={shape}];\n", quote(m.state_name(i))));
    }
    out.push_str(&format!("  __start -> {};\n", quote(m.state_name(m.initial()))));
    for r in m.rules() {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(m.state_name(r.from)),
            quote(m.state_name(r.to)),
            quote(&edge_label(m, r)),
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cfgames_core::langs::lprime_machine;
    use cfgames_core::coding::ThetaParams;
    use cfgames_core::Alphabet;

    #[test]
    fn dot_output_carries_states_edges_and_counter_captions() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let m = lprime_machine(ThetaParams::new(2).unwrap(), &sigma).unwrap();
        let dot = machine_to_dot(&m);
        assert!(dot.starts_with("digraph "));
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("__start ->"));
        assert!(dot.contains('/'), "counter captions missing: {dot}");
        assert!(dot.trim_end().ends_with('}'));
    }
}
