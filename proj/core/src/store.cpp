#include "cascademd/store.h"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace cascademd {

LatticeStore::LatticeStore(const BoxSpec& b) : box(b) {
  if (!b.valid()) {
    throw std::invalid_argument("LatticeStore: box dimensions must be positive");
  }
  slots.resize(static_cast<std::size_t>(b.slot_count()));
  for (LatticeId id = 0; id < b.slot_count(); ++id) {
    if (is_ghost(id, b)) ghost_site_ids.push_back(id);
  }
}

AtomRecord& LatticeStore::at(const AtomRef& ref) {
  if (ref.clash_idx < 0) return slots[static_cast<std::size_t>(ref.id)];
  return clash.at(ref.id)[static_cast<std::size_t>(ref.clash_idx)];
}

const AtomRecord& LatticeStore::at(const AtomRef& ref) const {
  if (ref.clash_idx < 0) return slots[static_cast<std::size_t>(ref.id)];
  return clash.at(ref.id)[static_cast<std::size_t>(ref.clash_idx)];
}

AtomRef LatticeStore::insert(const AtomRecord& rec) {
  const LatticeId id = nearest_site(rec.position, box);
  AtomRecord r = rec;
  r.valid = true;
  r.ghost = false;
  auto& slot = slots[static_cast<std::size_t>(id)];
  if (!slot.valid) {
    slot = r;
    return {id, -1};
  }
  auto& bucket = clash[id];
  bucket.push_back(r);
  return {id, static_cast<int>(bucket.size()) - 1};
}

void LatticeStore::update_hash() {
  // pass 1: evict slot atoms that drifted out of their own site's basin
  for_each_interior_id(box, [&](LatticeId id) {
    AtomRecord& rec = slots[static_cast<std::size_t>(id)];
    if (!rec.valid || rec.ghost) return;
    const LatticeId real = nearest_site(rec.position, box);
    if (real != id) {
      clash[real].push_back(std::move(rec));
      rec.valid = false;
    }
  });

  // pass 2: re-place every non-ghost clash atom under its current hash,
  // promoting into free slots; ghost records keep their old keys (the shell
  // is rebuilt wholesale by fill_ghosts)
  std::map<LatticeId, std::vector<AtomRecord>> keep;
  for (auto& [key, bucket] : clash) {
    for (AtomRecord& rec : bucket) {
      if (rec.ghost) {
        keep[key].push_back(std::move(rec));
        continue;
      }
      const LatticeId real = nearest_site(rec.position, box);
      AtomRecord& slot = slots[static_cast<std::size_t>(real)];
      if (!slot.valid && !is_ghost(real, box)) {
        slot = std::move(rec);
      } else {
        keep[real].push_back(std::move(rec));
      }
    }
  }
  clash = std::move(keep);
}

namespace {

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

void LatticeStore::canonicalize_positions() {
  const long g = box.ghost_width;

  auto wrap = [&](AtomRecord& rec) {
    // Shift decisions come from the recomputed nearest site each round, so
    // a position that lands within rounding of a basin boundary still ends
    // with an interior hash.
    for (int pass = 0; pass < 4; ++pass) {
      const LatticeCoord c = nearest_site_coord(rec.position, box.a0);
      const long kx = floor_div(c.x - 2 * g, 2 * box.box_x);
      const long ky = floor_div(c.y - g, box.box_y);
      const long kz = floor_div(c.z - g, box.box_z);
      if (kx == 0 && ky == 0 && kz == 0) return;
      rec.position.x -= static_cast<double>(kx) * box.len_x();
      rec.position.y -= static_cast<double>(ky) * box.len_y();
      rec.position.z -= static_cast<double>(kz) * box.len_z();
    }
    throw std::logic_error("canonicalize_positions: wrap did not converge");
  };

  for_each_interior_id(box, [&](LatticeId id) {
    AtomRecord& rec = slots[static_cast<std::size_t>(id)];
    if (rec.valid && !rec.ghost) wrap(rec);
  });
  for (auto& [key, bucket] : clash) {
    (void)key;
    for (AtomRecord& rec : bucket) {
      if (!rec.ghost) wrap(rec);
    }
  }
}

void LatticeStore::fill_ghosts() {
  // clear the previous shell
  for (LatticeId id : ghost_site_ids) {
    slots[static_cast<std::size_t>(id)].valid = false;
  }
  for (auto it = clash.begin(); it != clash.end();) {
    auto& bucket = it->second;
    std::erase_if(bucket, [](const AtomRecord& r) { return r.ghost; });
    it = bucket.empty() ? clash.erase(it) : std::next(it);
  }
  ghosts.clear();

  const long g = box.ghost_width;
  if (g == 0) return;

  // how many whole-box shifts can land inside the shell (>1 only for boxes
  // thinner than the ghost width)
  const long kx_max = (g + box.box_x - 1) / box.box_x;
  const long ky_max = (g + box.box_y - 1) / box.box_y;
  const long kz_max = (g + box.box_z - 1) / box.box_z;

  auto emit_images = [&](const AtomRecord& rec, const AtomRef& source,
                         const LatticeCoord& c) {
    for (long kz = -kz_max; kz <= kz_max; ++kz) {
      for (long ky = -ky_max; ky <= ky_max; ++ky) {
        for (long kx = -kx_max; kx <= kx_max; ++kx) {
          if (kx == 0 && ky == 0 && kz == 0) continue;
          const LatticeCoord ci{c.x + 2 * box.box_x * kx, c.y + box.box_y * ky,
                                c.z + box.box_z * kz};
          if (!coord_in_box(ci, box)) continue;
          assert(is_ghost(ci, box));
          AtomRecord img = rec;
          img.ghost = true;
          img.position.x += static_cast<double>(kx) * box.len_x();
          img.position.y += static_cast<double>(ky) * box.len_y();
          img.position.z += static_cast<double>(kz) * box.len_z();
          const LatticeId iid = coord_to_id(ci, box);
          AtomRecord& slot = slots[static_cast<std::size_t>(iid)];
          if (!slot.valid) {
            slot = img;
            ghosts.push_back({{iid, -1}, source});
          } else {
            auto& bucket = clash[iid];
            bucket.push_back(img);
            ghosts.push_back(
                {{iid, static_cast<int>(bucket.size()) - 1}, source});
          }
        }
      }
    }
  };

  // slots first so an image of a slot atom claims the mirrored ghost slot
  // before images of its clash-mates
  for_each_interior_id(box, [&](LatticeId id) {
    const AtomRecord& rec = slots[static_cast<std::size_t>(id)];
    if (rec.valid && !rec.ghost) {
      emit_images(rec, {id, -1}, id_to_coord(id, box));
    }
  });
  // snapshot of non-ghost buckets: emit_images mutates the map (ghost
  // buckets only, but iterator safety is cheap to buy)
  std::vector<std::pair<LatticeId, int>> clash_atoms;
  for (const auto& [key, bucket] : clash) {
    if (is_ghost(key, box)) continue;
    for (int i = 0; i < static_cast<int>(bucket.size()); ++i) {
      clash_atoms.emplace_back(key, i);
    }
  }
  for (const auto& [key, i] : clash_atoms) {
    const AtomRecord rec = clash[key][static_cast<std::size_t>(i)];
    if (!rec.ghost) {
      emit_images(rec, {key, i}, id_to_coord(key, box));
    }
  }
}

long LatticeStore::atom_count() const {
  long n = 0;
  for_each_interior_id(box, [&](LatticeId id) {
    const AtomRecord& rec = slots[static_cast<std::size_t>(id)];
    if (rec.valid && !rec.ghost) ++n;
  });
  for (const auto& [key, bucket] : clash) {
    if (is_ghost(key, box)) continue;
    for (const AtomRecord& rec : bucket) {
      if (!rec.ghost) ++n;
    }
  }
  return n;
}

}  // namespace cascademd
