use serde::Serialize;

use super::Document;

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("instance values serialize")
}

fn list<T: Serialize>(out: &mut Vec<String>, key: &str, items: &[T]) {
    if items.is_empty() {
        out.push(format!("  \"{key}\": []"));
        return;
    }
    let body: Vec<String> = items
        .iter()
        .map(|i| format!("    {}", compact(i)))
        .collect();
    out.push(format!("  \"{key}\": [\n{}\n  ]", body.join(",\n")));
}

fn map<'a, T: Serialize + 'a>(
    out: &mut Vec<String>,
    key: &str,
    items: impl Iterator<Item = (&'a String, &'a T)>,
) {
    let body: Vec<String> = items
        .map(|(k, v)| format!("    {}: {}", compact(k), compact(v)))
        .collect();
    if body.is_empty() {
        out.push(format!("  \"{key}\": {{}}"));
    } else {
        out.push(format!("  \"{key}\": {{\n{}\n  }}", body.join(",\n")));
    }
}

/// Fixed key order, nested values compact, one list item per line.
pub(super) fn canonical(doc: &Document) -> String {
    let mut fields = vec![
        format!("  \"format\": {}", compact(&doc.format)),
        format!("  \"base\": {}", compact(&doc.base)),
    ];
    if let Some(d) = doc.arity_bound {
        fields.push(format!("  \"arity_bound\": {d}"));
    }
    fields.push(format!("  \"objects\": {}", compact(&doc.objects)));
    map(&mut fields, "homs", doc.homs.iter());
    list(&mut fields, "mu", &doc.mu);
    if !doc.mu0.is_empty() {
        map(&mut fields, "mu0", doc.mu0.iter());
    }
    if !doc.tw.is_empty() {
        list(&mut fields, "tw", &doc.tw);
    }
    if !doc.morphisms.is_empty() {
        list(&mut fields, "morphisms", &doc.morphisms);
    }
    if !doc.connections.is_empty() {
        list(&mut fields, "connections", &doc.connections);
    }
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}
