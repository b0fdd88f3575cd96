#include "cascademd/neighbors.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cascademd {

OffsetIndex build_offsets(const BoxSpec& b, double cutoff) {
  if (!(cutoff > 0.0)) {
    throw std::invalid_argument("build_offsets: cutoff must be positive");
  }
  if (cutoff > static_cast<double>(b.ghost_width) * b.a0) {
    throw std::invalid_argument(
        "build_offsets: cutoff " + std::to_string(cutoff) +
        " A exceeds the ghost reach ghost_width*a0 = " +
        std::to_string(b.ghost_width * b.a0) + " A");
  }

  OffsetIndex idx;
  idx.cutoff = cutoff;

  const long reach = static_cast<long>(std::ceil(cutoff / b.a0)) + 1;
  const double c2 = cutoff * cutoff;
  const long tx2 = 2 * b.total_x();
  const LatticeId stride_y = tx2;
  const LatticeId stride_z = static_cast<LatticeId>(tx2) * b.total_y();

  struct Cand {
    LatticeId off;
    long dz;
  };
  std::vector<Cand> even, odd;

  for (long dz = -reach; dz <= reach; ++dz) {
    for (long dy = -reach; dy <= reach; ++dy) {
      for (long dx = -reach; dx <= reach; ++dx) {
        // same-sublattice candidate: displacement (dx, dy, dz) * a0
        {
          const double d2 = static_cast<double>(dx * dx + dy * dy + dz * dz) *
                            b.a0 * b.a0;
          if (d2 <= c2 && !(dx == 0 && dy == 0 && dz == 0)) {
            const LatticeId off = stride_z * dz + stride_y * dy + 2 * dx;
            even.push_back({off, dz});
            odd.push_back({off, dz});
          }
        }
        // corner rep -> center site: displacement (dx+.5, dy+.5, dz+.5) * a0
        {
          const double hx = dx + 0.5, hy = dy + 0.5, hz = dz + 0.5;
          const double d2 = (hx * hx + hy * hy + hz * hz) * b.a0 * b.a0;
          if (d2 <= c2) {
            even.push_back({stride_z * dz + stride_y * dy + (2 * dx + 1), dz});
          }
        }
        // center rep -> corner site: displacement (dx-.5, dy-.5, dz-.5) * a0
        {
          const double hx = dx - 0.5, hy = dy - 0.5, hz = dz - 0.5;
          const double d2 = (hx * hx + hy * hy + hz * hz) * b.a0 * b.a0;
          if (d2 <= c2) {
            odd.push_back({stride_z * dz + stride_y * dy + (2 * dx - 1), dz});
          }
        }
      }
    }
  }

  auto finish = [&idx](std::vector<Cand>& cand, std::vector<LatticeId>& full,
                       std::vector<LatticeId>& half) {
    std::sort(cand.begin(), cand.end(),
              [](const Cand& a, const Cand& b2) { return a.off < b2.off; });
    for (const Cand& c : cand) {
      assert(c.off != 0);
      full.push_back(c.off);
      if (c.off > 0) {
        half.push_back(c.off);
        idx.z_reach = std::max(idx.z_reach, c.dz);
      }
    }
  };
  finish(even, idx.even_full, idx.even_half);
  finish(odd, idx.odd_full, idx.odd_half);

  return idx;
}

std::vector<LatticeId> neighbors_of(LatticeId id, const OffsetIndex& idx,
                                    const BoxSpec& b) {
  const LatticeCoord c = id_to_coord(id, b);
  if (is_ghost(c, b)) {
    throw std::invalid_argument("neighbors_of: id " + std::to_string(id) +
                                " is a ghost site");
  }
  const auto& full = idx.full(c.x % 2 != 0);
  std::vector<LatticeId> out;
  out.reserve(full.size());
  for (LatticeId off : full) {
    const LatticeId nid = id + off;
    assert(nid >= 0 && nid < b.slot_count());
    out.push_back(nid);
  }
  return out;
}

}  // namespace cascademd
