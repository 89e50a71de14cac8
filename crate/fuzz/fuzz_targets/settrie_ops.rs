#![no_main]

use hsbb_core::settrie::SetTrie;
use libfuzzer_sys::fuzz_target;
use std::collections::BTreeSet;

// Each byte chunk is one operation: the first byte picks add / subset query
// / superset query, the rest are set elements mod 32.
fuzz_target!(|data: &[u8]| {
    let mut trie = SetTrie::new();
    let mut stored: Vec<Vec<u32>> = Vec::new();
    for chunk in data.split(|&b| b == 0xff) {
        let Some((&op, rest)) = chunk.split_first() else {
            continue;
        };
        let set: Vec<u32> = rest
            .iter()
            .map(|&b| u32::from(b % 32))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        match op % 3 {
            0 => {
                trie.add(&set);
                if !stored.contains(&set) {
                    stored.push(set);
                }
                assert_eq!(trie.len(), stored.len());
            }
            1 => {
                let naive = stored.iter().any(|s| s.iter().all(|x| set.contains(x)));
                assert_eq!(trie.has_subset(&set), naive);
            }
            _ => {
                let naive = stored.iter().any(|s| set.iter().all(|x| s.contains(x)));
                assert_eq!(trie.has_superset(&set), naive);
            }
        }
    }
});
