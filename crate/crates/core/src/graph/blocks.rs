use super::{Graph, GraphError, Vertex};

/// A maximal 2-connected subgraph, a bridge, or an isolated vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex list.
    pub vertices: Vec<Vertex>,
    /// Sorted edge list, `(u, v)` with `u < v`.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// The block as a standalone graph on `0..k` plus the map back to the parent.
    pub fn to_graph(&self) -> (Graph, Vec<Vertex>) {
        let index = |v: Vertex| self.vertices.binary_search(&v).unwrap();
        let g = Graph::from_edges(
            self.vertices.len(),
            self.edges.iter().map(|&(u, v)| (index(u), index(v))),
        )
        .expect("block edges are valid");
        (g, self.vertices.clone())
    }
}

/// Block–cutvertex decomposition of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcTree {
    pub blocks: Vec<Block>,
    pub cutvertices: Vec<Vertex>,
    /// `incidence[b]` lists the cutvertices lying in block `b`.
    pub incidence: Vec<Vec<Vertex>>,
}

/// Node of the bipartite block–cutvertex tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BcNode {
    Block(usize),
    Cut(Vertex),
}

impl BcTree {
    pub fn is_cutvertex(&self, v: Vertex) -> bool {
        self.cutvertices.binary_search(&v).is_ok()
    }

    /// Blocks containing `v`, in block order.
    pub fn blocks_of(&self, v: Vertex) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].contains(v))
            .collect()
    }

    /// The tree node representing vertex `v`: its cut node when `v` is a
    /// cutvertex, otherwise its unique block.
    pub fn node_of(&self, v: Vertex) -> BcNode {
        if self.is_cutvertex(v) {
            BcNode::Cut(v)
        } else {
            BcNode::Block(self.blocks_of(v)[0])
        }
    }

    fn node_neighbors(&self, node: BcNode) -> Vec<BcNode> {
        match node {
            BcNode::Block(b) => self.incidence[b].iter().map(|&c| BcNode::Cut(c)).collect(),
            BcNode::Cut(c) => self.blocks_of(c).into_iter().map(BcNode::Block).collect(),
        }
    }

    /// The unique tree path between two nodes, endpoints included.
    pub fn path(&self, from: BcNode, to: BcNode) -> Vec<BcNode> {
        use std::collections::{HashMap, VecDeque};
        let mut parent: HashMap<BcNode, BcNode> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        parent.insert(from, from);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for w in self.node_neighbors(u) {
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(w) {
                    e.insert(u);
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Number of blocks plus cutvertices minus tree edges; 1 for a tree.
    pub fn is_tree(&self) -> bool {
        let edges: usize = self.incidence.iter().map(Vec::len).sum();
        edges + 1 == self.blocks.len() + self.cutvertices.len()
    }
}

/// Biconnected components of a connected graph (Hopcroft–Tarjan, iterative).
pub fn blocks_and_cutvertices(g: &Graph) -> Result<BcTree, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Structure(
            "block decomposition needs a connected graph".into(),
        ));
    }
    let n = g.n();
    if n == 0 {
        return Ok(BcTree {
            blocks: vec![],
            cutvertices: vec![],
            incidence: vec![],
        });
    }
    if n == 1 {
        return Ok(BcTree {
            blocks: vec![Block {
                vertices: vec![0],
                edges: vec![],
            }],
            cutvertices: vec![],
            incidence: vec![vec![]],
        });
    }

    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    let mut time = 0;

    // Frame: (vertex, parent, next neighbour index)
    let root = 0;
    let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, usize::MAX, 0)];
    disc[root] = time;
    low[root] = time;
    time += 1;
    let mut root_children = 0;

    while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
        if *next < g.degree(u) {
            let w = g.neighbors(u)[*next];
            *next += 1;
            if disc[w] == usize::MAX {
                edge_stack.push((u, w));
                disc[w] = time;
                low[w] = time;
                time += 1;
                if u == root {
                    root_children += 1;
                }
                stack.push((w, u, 0));
            } else if w != parent && disc[w] < disc[u] {
                edge_stack.push((u, w));
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if low[u] >= disc[p] {
                    if p != root {
                        is_cut[p] = true;
                    }
                    let mut edges = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        edges.push((e.0.min(e.1), e.0.max(e.1)));
                        if e == (p, u) {
                            break;
                        }
                    }
                    edges.sort_unstable();
                    let mut vertices: Vec<Vertex> =
                        edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                    vertices.sort_unstable();
                    vertices.dedup();
                    blocks.push(Block { vertices, edges });
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[root] = true;
    }

    blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    let cutvertices: Vec<Vertex> = (0..n).filter(|&v| is_cut[v]).collect();
    let incidence = blocks
        .iter()
        .map(|b| {
            cutvertices
                .iter()
                .copied()
                .filter(|&c| b.contains(c))
                .collect()
        })
        .collect();
    Ok(BcTree {
        blocks,
        cutvertices,
        incidence,
    })
}
