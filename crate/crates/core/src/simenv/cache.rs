use std::collections::HashMap;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Node {
    page: u64,
    prev: usize,
    next: usize,
}

/// Result of touching a sequence of pages.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AccessOutcome {
    pub hits: usize,
    pub misses: Vec<u64>,
    pub evicted: Vec<u64>,
}

/// Page cache with least-recently-used replacement.
///
/// Nodes live in a slab and form an intrusive doubly linked list, head being
/// the most recently used page. All operations are O(1) per page.
#[derive(Debug, Clone)]
pub struct LruCache {
    capacity: usize,
    index: HashMap<u64, usize>,
    nodes: Vec<Node>,
    free: Vec<usize>,
    head: usize,
    tail: usize,
}

impl LruCache {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "cache capacity must be at least one page");
        LruCache {
            capacity,
            index: HashMap::new(),
            nodes: Vec::new(),
            free: Vec::new(),
            head: NIL,
            tail: NIL,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn contains(&self, page: u64) -> bool {
        self.index.contains_key(&page)
    }

    /// Resident pages from most to least recently used.
    pub fn pages_mru(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self.head;
        while cur != NIL {
            out.push(self.nodes[cur].page);
            cur = self.nodes[cur].next;
        }
        out
    }

    fn unlink(&mut self, idx: usize) {
        let Node { prev, next, .. } = self.nodes[idx];
        if prev != NIL {
            self.nodes[prev].next = next;
        } else {
            self.head = next;
        }
        if next != NIL {
            self.nodes[next].prev = prev;
        } else {
            self.tail = prev;
        }
    }

    fn push_front(&mut self, idx: usize) {
        self.nodes[idx].prev = NIL;
        self.nodes[idx].next = self.head;
        if self.head != NIL {
            self.nodes[self.head].prev = idx;
        }
        self.head = idx;
        if self.tail == NIL {
            self.tail = idx;
        }
    }

    fn pop_lru(&mut self) -> Option<u64> {
        if self.tail == NIL {
            return None;
        }
        let idx = self.tail;
        self.unlink(idx);
        let page = self.nodes[idx].page;
        self.index.remove(&page);
        self.free.push(idx);
        Some(page)
    }

    /// Touches one page. Returns `true` on a hit; misses are inserted and may
    /// push an eviction into `evicted`.
    pub fn touch(&mut self, page: u64, evicted: &mut Vec<u64>) -> bool {
        if let Some(&idx) = self.index.get(&page) {
            self.unlink(idx);
            self.push_front(idx);
            return true;
        }
        let node = Node {
            page,
            prev: NIL,
            next: NIL,
        };
        let idx = match self.free.pop() {
            Some(i) => {
                self.nodes[i] = node;
                i
            }
            None => {
                self.nodes.push(node);
                self.nodes.len() - 1
            }
        };
        self.index.insert(page, idx);
        self.push_front(idx);
        if self.index.len() > self.capacity {
            if let Some(victim) = self.pop_lru() {
                evicted.push(victim);
            }
        }
        false
    }

    /// Applies LRU semantics to each page in order.
    pub fn access(&mut self, pages: &[u64]) -> AccessOutcome {
        let mut out = AccessOutcome::default();
        for &p in pages {
            if self.touch(p, &mut out.evicted) {
                out.hits += 1;
            } else {
                out.misses.push(p);
            }
        }
        out
    }

    /// Changes capacity, evicting least-recently-used pages if shrinking.
    pub fn resize(&mut self, capacity: usize) -> Vec<u64> {
        assert!(capacity >= 1, "cache capacity must be at least one page");
        self.capacity = capacity;
        let mut evicted = Vec::new();
        while self.index.len() > capacity {
            evicted.extend(self.pop_lru());
        }
        evicted
    }
}

/// Free-function form of [`LruCache::access`].
pub fn cache_access(cache: &mut LruCache, page_ids: &[u64]) -> AccessOutcome {
    cache.access(page_ids)
}
