use specrec::catalog::Catalog;
use specrec::recognizer::{recognize, render_report, Format, Options, TargetSpec};

fn main() {
    let c = Catalog::bundled();
    let key = std::env::args().nth(1).unwrap_or_else(|| "aut-mcl".into());
    let rep = recognize(&TargetSpec::Named(key), &c, Options::default()).unwrap();
    print!("{}", render_report(&rep, Format::Text));
}
