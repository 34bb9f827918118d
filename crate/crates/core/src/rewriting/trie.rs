use crate::words::Letter;

pub(crate) const NONE: u32 = u32::MAX;

/// Dense trie over letter codes. Each node records the rule whose key ends
/// there and how many live keys pass through it, so subtree scans can skip
/// branches whose rules have all been retired.
#[derive(Clone, Debug)]
pub(crate) struct Trie {
    width: usize,
    children: Vec<u32>,
    terminal: Vec<u32>,
    live: Vec<u32>,
}

impl Trie {
    pub fn new(width: usize) -> Self {
        let width = width.max(1);
        Trie { width, children: vec![NONE; width], terminal: vec![NONE], live: vec![0] }
    }

    #[inline]
    pub fn root(&self) -> u32 {
        0
    }

    #[inline]
    pub fn child(&self, node: u32, l: Letter) -> u32 {
        self.children[node as usize * self.width + l.code()]
    }

    #[inline]
    pub fn terminal(&self, node: u32) -> u32 {
        self.terminal[node as usize]
    }

    pub fn insert(&mut self, key: impl Iterator<Item = Letter>, id: u32) {
        let mut node = 0usize;
        self.live[0] += 1;
        for l in key {
            let slot = node * self.width + l.code();
            let mut next = self.children[slot];
            if next == NONE {
                next = self.terminal.len() as u32;
                self.children[slot] = next;
                self.children.extend(std::iter::repeat_n(NONE, self.width));
                self.terminal.push(NONE);
                self.live.push(0);
            }
            node = next as usize;
            self.live[node] += 1;
        }
        debug_assert_eq!(self.terminal[node], NONE, "duplicate key");
        self.terminal[node] = id;
    }

    pub fn remove(&mut self, key: impl Iterator<Item = Letter>, id: u32) {
        let mut node = 0usize;
        self.live[0] -= 1;
        for l in key {
            node = self.children[node * self.width + l.code()] as usize;
            self.live[node] -= 1;
        }
        debug_assert_eq!(self.terminal[node], id);
        self.terminal[node] = NONE;
    }

    /// Follows `key` from the root, returning the reached node.
    pub fn descend(&self, key: impl Iterator<Item = Letter>) -> Option<u32> {
        let mut node = 0u32;
        for l in key {
            node = self.child(node, l);
            if node == NONE || self.live[node as usize] == 0 {
                return None;
            }
        }
        Some(node)
    }

    /// Collects live terminals strictly below `node`.
    pub fn terminals_below(&self, node: u32, out: &mut Vec<u32>) {
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            let base = x as usize * self.width;
            for c in (0..self.width).rev() {
                let y = self.children[base + c];
                if y != NONE && self.live[y as usize] > 0 {
                    if self.terminal[y as usize] != NONE {
                        out.push(self.terminal[y as usize]);
                    }
                    stack.push(y);
                }
            }
        }
    }
}
