#![no_main]

use hsbb_core::subset_list::OrderedSubsetList;
use libfuzzer_sys::fuzz_target;

// First byte sizes the ground set; every further byte is one operation.
fuzz_target!(|data: &[u8]| {
    let Some((&n, ops)) = data.split_first() else {
        return;
    };
    let n = usize::from(n % 64) + 1;
    let mut list = OrderedSubsetList::full(n);
    let mut model: Vec<bool> = vec![true; n];
    let mut deleted: Vec<usize> = Vec::new();
    let mut marks: Vec<(usize, OrderedSubsetList)> = Vec::new();
    for &op in ops {
        match op % 4 {
            0 | 1 => {
                let pos = usize::from(op >> 2) % n;
                if model[pos] {
                    list.delete(pos);
                    model[pos] = false;
                    deleted.push(pos);
                }
            }
            2 => {
                if let Some(pos) = deleted.pop() {
                    assert_eq!(list.undo(), pos);
                    model[pos] = true;
                    marks.retain(|(m, _)| *m <= deleted.len());
                }
            }
            _ => {
                if op & 4 == 0 {
                    marks.push((deleted.len(), list.clone()));
                } else if let Some((m, snapshot)) = marks.pop() {
                    while deleted.len() > m {
                        model[deleted.pop().unwrap()] = true;
                        list.undo();
                    }
                    assert!(list == snapshot);
                }
            }
        }
        let expected: Vec<u32> = (0..n as u32).filter(|&i| model[i as usize]).collect();
        assert_eq!(list.iter().collect::<Vec<_>>(), expected);
    }
});
