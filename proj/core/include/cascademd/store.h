#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cascademd/lattice.h"

namespace cascademd {

// One atom.  Lives either in the flat hash array (one slot per lattice site,
// keyed by the nearest-site id) or, when that slot is taken, in the ordered
// clash map under the same id.  Ghost copies carry ghost=true and mirror an
// interior atom; the owning store tracks the image->source links separately
// so the record itself stays lean.
struct AtomRecord {
  Vec3 position;  // Angstrom, ghost-inclusive frame
  Vec3 velocity;  // Angstrom/ps
  Vec3 force;     // eV/Angstrom, rebuilt every step
  double rho_bar = 0.0;
  double df = 0.0;  // embedding derivative at rho_bar
  std::uint64_t tag = 0;
  std::uint16_t species = 0;
  bool valid = false;  // slot occupancy; always true for clash records
  bool ghost = false;
};
static_assert(sizeof(AtomRecord) <= 128, "atom record exceeds the size budget");

// reference to a record: clash_idx < 0 means the slot at `id`, otherwise
// clash[id][clash_idx]
struct AtomRef {
  LatticeId id = -1;
  int clash_idx = -1;
};

struct GhostLink {
  AtomRef image;
  AtomRef source;
};

// Lattice-hash atom storage: a slot per site plus an ordered clash map for
// atoms whose nearest site is already occupied.  All iteration that affects
// results walks sites in id order and clash buckets in key order, so runs
// are reproducible.
struct LatticeStore {
  BoxSpec box;
  std::vector<AtomRecord> slots;                       // box.slot_count()
  std::map<LatticeId, std::vector<AtomRecord>> clash;  // nearest-site id -> atoms
  std::vector<GhostLink> ghosts;                       // rebuilt by fill_ghosts
  std::vector<LatticeId> ghost_site_ids;               // all ghost-shell sites, sorted

  explicit LatticeStore(const BoxSpec& b);

  AtomRecord& at(const AtomRef& ref);
  const AtomRecord& at(const AtomRef& ref) const;

  // place one real atom by the hash of its position (slot if free, clash
  // otherwise); position must lie inside the ghost-inclusive volume
  AtomRef insert(const AtomRecord& rec);

  // Two-pass rehash after positions moved: evict slot atoms whose hash no
  // longer matches their slot, then re-place every non-ghost clash atom
  // (slot when free, re-keyed clash bucket otherwise).  Ghost records are
  // left alone.  Idempotent once positions stop changing.
  void update_hash();

  // Periodic wrap: shift every non-ghost atom by whole box lengths until its
  // nearest site lies in the interior region.  Run before update_hash.
  void canonicalize_positions();

  // Rebuild the ghost shell from the interior: clear all ghost records, then
  // copy every boundary atom (slot and clash alike) into the ghost sites its
  // periodic images fall on, positions shifted by box lengths.  Fills the
  // image->source link list used to fold accumulated quantities back.
  void fill_ghosts();

  long atom_count() const;  // non-ghost atoms
};

// interior (non-ghost) site ids in ascending order; x fastest, then y, then z
template <class F>
void for_each_interior_id(const BoxSpec& b, F&& f) {
  const long tx2 = 2 * b.total_x();
  const long g = b.ghost_width;
  for (long z = g; z < g + b.box_z; ++z) {
    for (long y = g; y < g + b.box_y; ++y) {
      const LatticeId row = (static_cast<LatticeId>(z) * b.total_y() + y) * tx2;
      for (long x = 2 * g; x < 2 * (g + b.box_x); ++x) {
        f(row + x);
      }
    }
  }
}

}  // namespace cascademd
