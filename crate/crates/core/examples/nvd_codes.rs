//! Non-vanishing determinant check for the Alamouti, Golden and parallel
//! Golden codes under 4-QAM and 16-QAM difference alphabets.

use mhdmt::stbc::{alamouti, block_stacked, golden, verify_nvd, QamAlphabet};

fn main() {
    let q4 = QamAlphabet::new(4).unwrap();
    let q16 = QamAlphabet::new(16).unwrap();
    let codes = [
        ("alamouti", alamouti(&q4)),
        ("golden m=0", golden(&q4, 0).unwrap()),
        ("golden m=1", golden(&q4, 1).unwrap()),
        ("block-stacked [1,1]", block_stacked(&q4, vec![1, 1]).unwrap()),
    ];
    for (name, cb) in &codes {
        for q in [&q4, &q16] {
            let r = verify_nvd(cb, &q.differences()).unwrap();
            println!(
                "{name:20} {:2}-QAM differences: min {:.6} (exact {:?}) at {:?} after {} evaluations",
                q.order(),
                r.min,
                r.exact_min,
                r.argmin.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>(),
                r.evaluations
            );
        }
    }
}
