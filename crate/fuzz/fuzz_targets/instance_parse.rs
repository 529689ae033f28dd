#![no_main]

use ainfty::exactlin::{Rational, TruncSeries};
use ainfty::instance::{Base, Document};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = Document::parse(text) else { return };
    // A parsed document has a canonical form that parses back to itself.
    let canon = doc.to_canonical_string().expect("parsed documents normalize");
    let again = Document::parse(&canon).expect("canonical form parses");
    assert_eq!(again.to_canonical_string().unwrap(), canon);
    match doc.base().expect("base was checked") {
        Base::Rational => {
            let _ = doc.category::<Rational>();
        }
        Base::Series { .. } => {
            let _ = doc.category::<TruncSeries>();
        }
    }
});
