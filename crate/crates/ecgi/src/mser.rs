//! Maximally stable extremal regions over upper level sets.
//!
//! The input is an 8-bit raster. Pixels are flooded from the brightest level
//! downward into a component tree (4-connectivity), so every node is a
//! connected component of some upper level set `{p : level(p) >= t}`. A node
//! `n` at level `t` with area `A(n)` has one-sided variation
//!
//! ```text
//! var(n) = (A(ancestor at level >= t - delta) - A(n)) / A(n)
//! ```
//!
//! and is reported when `var(n) <= max_variation` and `var` is a weak local
//! minimum along its root path (not above the parent's or any child's).
//! The whole procedure is deterministic: ties are broken by pixel index.

/// One stable region: flat pixel indices of a component, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableRegion {
    pub level: u8,
    pub pixels: Vec<usize>,
}

#[derive(Debug)]
struct Node {
    level: u8,
    area: u32,
    parent: Option<u32>,
    children: Vec<u32>,
    own_pixels: Vec<u32>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let up = self.parent[self.parent[i as usize] as usize];
            self.parent[i as usize] = up;
            i = up;
        }
        i
    }

    /// Attaches `b`'s root under `a`'s root and returns the new root.
    fn union_into(&mut self, a: u32, b: u32) -> u32 {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[rb as usize] = ra;
        }
        ra
    }
}

/// Detects stable bright regions in an 8-bit raster.
///
/// Returns regions ordered by (level descending, first pixel ascending).
pub fn stable_regions(
    levels: &[u8],
    width: usize,
    height: usize,
    delta: u8,
    max_variation: f64,
) -> Vec<StableRegion> {
    assert_eq!(levels.len(), width * height, "raster length");
    assert!(delta >= 1, "delta must be at least 1");
    let n = width * height;
    if n == 0 {
        return Vec::new();
    }

    // counting sort: pixel indices by level descending, index ascending
    let mut histogram = [0usize; 256];
    for &l in levels {
        histogram[l as usize] += 1;
    }
    let mut starts = [0usize; 256];
    let mut acc = 0;
    for l in (0..256).rev() {
        starts[l] = acc;
        acc += histogram[l];
    }
    let mut order = vec![0u32; n];
    let mut cursor = starts;
    for (i, &l) in levels.iter().enumerate() {
        order[cursor[l as usize]] = i as u32;
        cursor[l as usize] += 1;
    }

    let mut uf = UnionFind::new(n);
    let mut nodes: Vec<Node> = Vec::new();
    // component-tree node owning each union-find root
    let mut node_of = vec![u32::MAX; n];
    let mut added = vec![false; n];

    for &p in &order {
        let (px, py) = (p as usize % width, p as usize / width);
        let level = levels[p as usize];
        let node_id = nodes.len() as u32;
        nodes.push(Node {
            level,
            area: 1,
            parent: None,
            children: Vec::new(),
            own_pixels: vec![p],
        });
        node_of[p as usize] = node_id;
        added[p as usize] = true;

        let neighbors = [
            (px > 0).then(|| p - 1),
            (px + 1 < width).then(|| p + 1),
            (py > 0).then(|| p - width as u32),
            (py + 1 < height).then(|| p + width as u32),
        ];
        for q in neighbors.into_iter().flatten() {
            if !added[q as usize] {
                continue;
            }
            let rp = uf.find(p);
            let rq = uf.find(q);
            if rp == rq {
                continue;
            }
            let np = node_of[rp as usize];
            let nq = node_of[rq as usize];
            let root = uf.union_into(rp, rq);
            if nodes[nq as usize].level == level {
                // same level: merge the two nodes into np
                let Node {
                    area,
                    children,
                    own_pixels,
                    ..
                } = std::mem::replace(
                    &mut nodes[nq as usize],
                    Node {
                        level,
                        area: 0,
                        parent: Some(np),
                        children: Vec::new(),
                        own_pixels: Vec::new(),
                    },
                );
                nodes[np as usize].area += area;
                nodes[np as usize].own_pixels.extend(own_pixels);
                for c in &children {
                    nodes[*c as usize].parent = Some(np);
                }
                nodes[np as usize].children.extend(children);
            } else {
                // brighter component joins the current level's node
                nodes[nq as usize].parent = Some(np);
                nodes[np as usize].children.push(nq);
                nodes[np as usize].area += nodes[nq as usize].area;
            }
            node_of[root as usize] = np;
        }
    }

    // one-sided variation against the ancestor delta levels up
    let variation: Vec<f64> = (0..nodes.len())
        .map(|i| {
            if nodes[i].area == 0 {
                return f64::INFINITY; // merged-away placeholder
            }
            let floor = nodes[i].level as i32 - delta as i32;
            let mut m = i;
            while let Some(parent) = nodes[m].parent {
                if nodes[parent as usize].level as i32 >= floor {
                    m = parent as usize;
                } else {
                    break;
                }
            }
            (nodes[m].area as f64 - nodes[i].area as f64) / nodes[i].area as f64
        })
        .collect();

    let mut selected: Vec<usize> = (0..nodes.len())
        .filter(|&i| {
            if nodes[i].area == 0 || variation[i] > max_variation {
                return false;
            }
            if let Some(parent) = nodes[i].parent {
                if variation[i] > variation[parent as usize] {
                    return false;
                }
            }
            nodes[i]
                .children
                .iter()
                .all(|&c| variation[i] <= variation[c as usize])
        })
        .collect();

    // pixel extraction: each selected node owns its whole subtree
    let mut regions: Vec<StableRegion> = selected
        .drain(..)
        .map(|root| {
            let mut pixels: Vec<usize> = Vec::with_capacity(nodes[root].area as usize);
            let mut stack = vec![root as u32];
            while let Some(id) = stack.pop() {
                let node = &nodes[id as usize];
                pixels.extend(node.own_pixels.iter().map(|&p| p as usize));
                stack.extend(&node.children);
            }
            pixels.sort_unstable();
            StableRegion {
                level: nodes[root].level,
                pixels,
            }
        })
        .collect();
    regions.sort_by(|a, b| b.level.cmp(&a.level).then(a.pixels[0].cmp(&b.pixels[0])));
    regions
}
