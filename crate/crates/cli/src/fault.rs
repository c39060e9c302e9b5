//! A deliberately broken face map, used to check that the table command
//! notices when the complex is wrong.

use ybhom::biquandle::{Element, YBMap};
use ybhom::complex::FaceMaps;

pub struct FaultyFaces<'a>(pub &'a YBMap);

impl FaceMaps for FaultyFaces<'_> {
    fn size(&self) -> usize {
        self.0.size()
    }

    fn r1(&self, a: Element, b: Element) -> Element {
        self.0.r1(a, b)
    }

    fn r2(&self, a: Element, b: Element) -> Element {
        self.0.r2(a, b)
    }

    fn fingerprint(&self) -> u64 {
        !self.0.fingerprint()
    }

    /// Threads rightward like the real face map but leaves the final
    /// coordinate it passes unchanged.
    fn face_right_into(&self, i: usize, t: &[Element], out: &mut Vec<Element>) {
        out.clear();
        out.extend_from_slice(&t[..i - 1]);
        let mut c = t[i - 1];
        let last = t.len() - 1;
        for (j, &x) in t.iter().enumerate().skip(i) {
            out.push(if j == last { x } else { self.0.r1(c, x) });
            c = self.0.r2(c, x);
        }
    }
}
