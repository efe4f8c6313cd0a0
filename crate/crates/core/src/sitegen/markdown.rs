//! Small helpers for emitting Markdown.

/// Escapes characters that would otherwise start inline markup.
pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' | '*' | '_' | '[' | ']' | '<' | '>' | '`' | '|' | '#' => {
                out.push('\\');
                out.push(c);
            }
            '\n' | '\r' => out.push(' '),
            _ => out.push(c),
        }
    }
    out
}

/// A paragraph of free text; line breaks are kept, markup is escaped.
pub fn paragraph(text: &str) -> String {
    text.trim().lines().map(|l| escape(l.trim_end())).collect::<Vec<_>>().join("\n")
}

pub fn link(text: &str, target: &str) -> String {
    let target = target.replace('(', "%28").replace(')', "%29").replace(' ', "%20");
    format!("[{}]({target})", escape(text))
}

pub fn code(text: &str) -> String {
    if text.contains('`') {
        escape(text)
    } else {
        format!("`{text}`")
    }
}

pub fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    out.push_str("| ");
    out.push_str(&header.join(" | "));
    out.push_str(" |\n|");
    for _ in header {
        out.push_str("---|");
    }
    out.push('\n');
    for row in rows {
        out.push_str("| ");
        out.push_str(&row.join(" | "));
        out.push_str(" |\n");
    }
}

/// Path from the directory of page `from` to page `to`; both are
/// site-relative paths.
pub fn relative(from: &str, to: &str) -> String {
    let from_dir: Vec<&str> = {
        let mut parts: Vec<&str> = from.split('/').collect();
        parts.pop();
        parts
    };
    let target: Vec<&str> = to.split('/').collect();
    let common = from_dir.iter().zip(&target).take_while(|(a, b)| a == b).count();
    let mut out: Vec<&str> = vec![".."; from_dir.len() - common];
    out.extend(&target[common..]);
    out.join("/")
}
