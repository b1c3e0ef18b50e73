//! Block CSR: the p(p+1)/2 upper-triangular subgraph blocks of a
//! symmetrically partitioned graph, each with its own local CSR arrays.
//!
//! Destination ids inside a block are stored local to the destination part
//! (`global - dst_base`), so per-task scratch maps can be sized to one part
//! instead of the whole vertex range. Blocks sit in row-major `(i, j)`
//! order; empty blocks are materialized so index arithmetic never branches.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::graph::GraphCsr;
use crate::partition::{tri_block_count, tri_index, PartitionStats, PartitionVector};

/// One edge-induced subgraph block `G_{i,j}`: edges from part `V_i` into
/// part `V_j`, `i <= j`. Rows are indexed by `u - src_base`; stored
/// neighbor values are `v - dst_base`, strictly increasing per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphBlock {
    i: usize,
    j: usize,
    src_base: usize,
    dst_base: usize,
    dst_count: usize,
    row_offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl SubgraphBlock {
    fn empty(
        i: usize,
        j: usize,
        src_base: usize,
        dst_base: usize,
        src_count: usize,
        dst_count: usize,
    ) -> Self {
        SubgraphBlock {
            i,
            j,
            src_base,
            dst_base,
            dst_count,
            row_offsets: vec![0; src_count + 1],
            neighbors: Vec::new(),
        }
    }

    pub fn coords(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn src_base(&self) -> usize {
        self.src_base
    }

    pub fn dst_base(&self) -> usize {
        self.dst_base
    }

    /// Number of source rows, `|V_i|`.
    pub fn src_count(&self) -> usize {
        self.row_offsets.len() - 1
    }

    /// Width of the destination part, `|V_j|`; the local id space.
    pub fn dst_count(&self) -> usize {
        self.dst_count
    }

    pub fn nnz(&self) -> usize {
        *self.row_offsets.last().unwrap()
    }

    /// Partial neighbor list of local row `r`, in local destination ids.
    pub fn local_row(&self, r: usize) -> &[usize] {
        &self.neighbors[self.row_offsets[r]..self.row_offsets[r + 1]]
    }

    /// Average partial degree `δ = nnz / |V_i|`; 0 for an empty source part.
    pub fn avg_degree(&self) -> f64 {
        let rows = self.src_count();
        if rows == 0 {
            0.0
        } else {
            self.nnz() as f64 / rows as f64
        }
    }

    /// Serialized footprint in bytes, used by the transfer model.
    pub fn byte_size(&self) -> u64 {
        8 * (self.row_offsets.len() + self.neighbors.len()) as u64
    }
}

/// All upper-triangular blocks of a partitioned graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGraph {
    pv: PartitionVector,
    blocks: Vec<SubgraphBlock>,
    m: usize,
}

/// Splits `g` into blocks along `pv`. Every edge lands in exactly one
/// block, the `(i, j)` with `cuts[i] <= u < cuts[i+1]` and
/// `cuts[j] <= v < cuts[j+1]`.
pub fn build_block_graph(g: &GraphCsr, pv: &PartitionVector) -> BlockGraph {
    assert_eq!(
        pv.vertex_count(),
        g.vertex_count(),
        "partition does not span the graph"
    );
    let p = pv.part_count();
    let cuts = pv.cuts();

    let mut blocks: Vec<SubgraphBlock> = Vec::with_capacity(tri_block_count(p));
    for i in 0..p {
        for j in i..p {
            blocks.push(SubgraphBlock::empty(
                i,
                j,
                cuts[i],
                cuts[j],
                pv.part_len(i),
                pv.part_len(j),
            ));
        }
    }

    // Vertices ascend and each neighbor list ascends, so every block
    // receives its rows in order: a running cursor per block suffices.
    for u in 0..g.vertex_count() {
        let i = pv.part_of(u);
        let local_u = u - cuts[i];
        let mut j = i;
        for &v in g.neighbors(u) {
            while v >= cuts[j + 1] {
                j += 1;
            }
            blocks[tri_index(p, i, j)].neighbors.push(v - cuts[j]);
        }
        for jj in i..p {
            let b = &mut blocks[tri_index(p, i, jj)];
            b.row_offsets[local_u + 1] = b.neighbors.len();
        }
    }

    BlockGraph {
        pv: pv.clone(),
        blocks,
        m: g.edge_count(),
    }
}

impl BlockGraph {
    pub fn partition(&self) -> &PartitionVector {
        &self.pv
    }

    pub fn part_count(&self) -> usize {
        self.pv.part_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.pv.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn block(&self, i: usize, j: usize) -> &SubgraphBlock {
        &self.blocks[tri_index(self.part_count(), i, j)]
    }

    pub fn block_at(&self, flat: usize) -> &SubgraphBlock {
        &self.blocks[flat]
    }

    pub fn blocks(&self) -> &[SubgraphBlock] {
        &self.blocks
    }

    /// Flat row-major index of block `(i, j)`.
    pub fn block_index(&self, i: usize, j: usize) -> usize {
        tri_index(self.part_count(), i, j)
    }

    /// `N(G_{i,j}, u)` as global ids, strictly increasing. `u` must lie in
    /// part `V_i`.
    pub fn partial_neighbors(
        &self,
        i: usize,
        j: usize,
        u: usize,
    ) -> impl Iterator<Item = usize> + '_ {
        let b = self.block(i, j);
        assert!(
            u >= b.src_base && u - b.src_base < b.src_count(),
            "vertex {u} is not in source part {i}"
        );
        let base = b.dst_base;
        b.local_row(u - b.src_base).iter().map(move |&v| v + base)
    }

    /// Average partial degree of block `(i, j)`.
    pub fn block_avg_degree(&self, i: usize, j: usize) -> f64 {
        self.block(i, j).avg_degree()
    }

    /// Largest part size; the scratch capacity a task kernel can need.
    pub fn max_part_len(&self) -> usize {
        (0..self.part_count())
            .map(|i| self.pv.part_len(i))
            .max()
            .unwrap_or(0)
    }

    /// Balance statistics recomputed from the materialized blocks. Agrees
    /// with [`crate::partition::partition_stats`] on the source graph.
    pub fn stats(&self) -> PartitionStats {
        let p = self.part_count();
        let m = self.m as u64;
        let n = self.vertex_count();

        let m_max = self
            .blocks
            .iter()
            .map(|b| b.nnz() as u64)
            .max()
            .unwrap_or(0);
        let m_avg = 2.0 * m as f64 / (p as f64 * (p + 1) as f64);
        let lambda = if m_avg == 0.0 {
            1.0
        } else {
            m_max as f64 / m_avg
        };

        let mut d_max = 0usize;
        let mut d_max_blk = 0usize;
        for i in 0..p {
            for r in 0..self.pv.part_len(i) {
                let mut row_total = 0usize;
                for j in i..p {
                    let len = self.block(i, j).local_row(r).len();
                    row_total += len;
                    d_max_blk = d_max_blk.max(len);
                }
                d_max = d_max.max(row_total);
            }
        }
        let c_max = if d_max_blk == 0 {
            1.0
        } else {
            d_max as f64 / d_max_blk as f64
        };

        let d_avg = if n == 0 { 0.0 } else { m as f64 / n as f64 };
        let delta_sum: f64 = self.blocks.iter().map(|b| b.avg_degree()).sum();
        let d_avg_blk = delta_sum / tri_block_count(p) as f64;
        let c_avg = if d_avg_blk == 0.0 {
            1.0
        } else {
            d_avg / d_avg_blk
        };

        PartitionStats {
            p,
            m_max,
            m_avg,
            lambda,
            d_max,
            d_max_blk,
            c_max,
            d_avg,
            d_avg_blk,
            c_avg,
        }
    }

    /// Writes the versioned binary image: header (magic, version, n, m, p,
    /// cuts), then per-block CSR arrays, all little-endian u64.
    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        for value in [
            self.vertex_count() as u64,
            self.m as u64,
            self.part_count() as u64,
        ] {
            w.write_all(&value.to_le_bytes())?;
        }
        for &c in self.pv.cuts() {
            w.write_all(&(c as u64).to_le_bytes())?;
        }
        for b in &self.blocks {
            for &off in &b.row_offsets {
                w.write_all(&(off as u64).to_le_bytes())?;
            }
            for &v in &b.neighbors {
                w.write_all(&(v as u64).to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> io::Result<BlockGraph> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(bad_data("not a block graph file (bad magic)"));
        }
        let version = read_u32(r)?;
        if version != VERSION {
            return Err(bad_data(format!("unsupported version {version}")));
        }
        let n = read_u64(r)? as usize;
        let m = read_u64(r)? as usize;
        let p = read_u64(r)? as usize;
        if p == 0 {
            return Err(bad_data("zero parts"));
        }
        let mut cuts = Vec::with_capacity(p + 1);
        for _ in 0..=p {
            cuts.push(read_u64(r)? as usize);
        }
        if cuts[0] != 0 || cuts[p] != n || cuts.windows(2).any(|w| w[0] > w[1]) {
            return Err(bad_data("invalid cut vector"));
        }
        let pv = PartitionVector::from_cuts(cuts);

        let mut blocks = Vec::with_capacity(tri_block_count(p));
        let mut total = 0usize;
        for i in 0..p {
            for j in i..p {
                let rows = pv.part_len(i);
                let mut row_offsets = Vec::with_capacity(rows + 1);
                for _ in 0..=rows {
                    row_offsets.push(read_u64(r)? as usize);
                }
                if row_offsets[0] != 0 || row_offsets.windows(2).any(|w| w[0] > w[1]) {
                    return Err(bad_data("non-monotone block row offsets"));
                }
                let nnz = *row_offsets.last().unwrap();
                let span = pv.part_len(j);
                let mut neighbors = Vec::with_capacity(nnz);
                for _ in 0..nnz {
                    let v = read_u64(r)? as usize;
                    if v >= span {
                        return Err(bad_data("local destination id out of part range"));
                    }
                    neighbors.push(v);
                }
                total += nnz;
                blocks.push(SubgraphBlock {
                    i,
                    j,
                    src_base: pv.cuts()[i],
                    dst_base: pv.cuts()[j],
                    dst_count: span,
                    row_offsets,
                    neighbors,
                });
            }
        }
        if total != m {
            return Err(bad_data("block nonzero sum disagrees with header"));
        }
        Ok(BlockGraph { pv, blocks, m })
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()
    }

    pub fn load(path: &Path) -> io::Result<BlockGraph> {
        let mut r = BufReader::new(File::open(path)?);
        Self::read_from(&mut r)
    }
}

const MAGIC: &[u8; 8] = b"BBTCBCSR";
const VERSION: u32 = 1;

fn bad_data(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.into())
}

fn read_u32<R: Read>(r: &mut R) -> io::Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64<R: Read>(r: &mut R) -> io::Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}
