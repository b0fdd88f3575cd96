#pragma once

// Shared fixtures and independent oracles for the test suites.  Everything
// here is deliberately dumb and slow: brute-force scans and O(n^2) reference
// evaluations that the fast engine must agree with.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cascademd/forces.h"
#include "cascademd/potential.h"
#include "cascademd/sim.h"
#include "cascademd/store.h"
#include "cascademd/synthetic.h"

namespace testutil {

using namespace cascademd;

// one synthetic table per process, produced through the same write/parse
// path the CLI uses, so unit tests exercise exactly what a run would load
inline const EamPotential& test_potential() {
  static const EamPotential pot = [] {
    namespace fs = std::filesystem;
    const fs::path p =
        fs::temp_directory_path() /
        ("cascademd_test_pot_" + std::to_string(::getpid()) + ".eam");
    synthetic::write_table(p.string());
    EamPotential parsed = parse_potential_file(p.string());
    std::error_code ec;
    fs::remove(p, ec);
    return parsed;
  }();
  return pot;
}

inline std::string temp_path(const std::string& name) {
  namespace fs = std::filesystem;
  return (fs::temp_directory_path() /
          ("cascademd_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

// All sites within `cutoff` of site `id`, ascending, by scanning every slot.
// Distances use the same integer/half-integer arithmetic and the same
// expression shape as the offset builder, so shell-boundary ties (a cutoff
// exactly on a shell radius) resolve identically on both sides.
inline std::vector<LatticeId> brute_neighbors(LatticeId id, const BoxSpec& b,
                                              double cutoff) {
  const LatticeCoord c1 = id_to_coord(id, b);
  const double c2 = cutoff * cutoff;
  std::vector<LatticeId> out;
  for (LatticeId j = 0; j < b.slot_count(); ++j) {
    if (j == id) continue;
    const LatticeCoord cj = id_to_coord(j, b);
    const double hx = 0.5 * static_cast<double>(cj.x - c1.x);
    const double po = 0.5 * static_cast<double>((cj.x & 1) - (c1.x & 1));
    const double hy = static_cast<double>(cj.y - c1.y) + po;
    const double hz = static_cast<double>(cj.z - c1.z) + po;
    const double s = hx * hx + hy * hy + hz * hz;
    if (s * b.a0 * b.a0 <= c2) out.push_back(j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// minimum-image reference EAM evaluation, independent of the lattice store;
// valid when every box length exceeds twice the potential cutoff

struct RefAtom {
  Vec3 pos;
  std::uint64_t tag = 0;
};

struct RefState {
  double embedding = 0.0;
  double pair = 0.0;
  std::map<std::uint64_t, double> rho;
  std::map<std::uint64_t, Vec3> force;
};

inline RefState reference_eam(const std::vector<RefAtom>& atoms,
                              const EamPotential& pot, double lx, double ly,
                              double lz) {
  const double cut2 = pot.cutoff * pot.cutoff;
  const auto sep = [&](const Vec3& a, const Vec3& b) {
    Vec3 d = a - b;
    d.x -= lx * std::round(d.x / lx);
    d.y -= ly * std::round(d.y / ly);
    d.z -= lz * std::round(d.z / lz);
    return d;
  };

  RefState st;
  for (const RefAtom& a : atoms) {
    st.rho[a.tag] = 0.0;
    st.force[a.tag] = Vec3{};
  }
  const std::size_t n = atoms.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 d = sep(atoms[i].pos, atoms[j].pos);
      const double r2 = d.norm2();
      if (r2 > cut2) continue;
      const double rho = pot.density(std::sqrt(r2)).value;
      st.rho[atoms[i].tag] += rho;
      st.rho[atoms[j].tag] += rho;
    }
  }
  std::map<std::uint64_t, double> df;
  for (const RefAtom& a : atoms) {
    const SplineEval em = pot.embedding(st.rho[a.tag]);
    st.embedding += em.value;
    df[a.tag] = em.deriv;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 d = sep(atoms[i].pos, atoms[j].pos);
      const double r2 = d.norm2();
      if (r2 > cut2) continue;
      const double r = std::sqrt(r2);
      const SplineEval ph = pot.pair(r);
      const SplineEval de = pot.density(r);
      const double fp =
          -((df[atoms[i].tag] + df[atoms[j].tag]) * de.deriv + ph.deriv) / r;
      st.force[atoms[i].tag] += fp * d;
      st.force[atoms[j].tag] -= fp * d;
      st.pair += ph.value;
    }
  }
  return st;
}

// ---------------------------------------------------------------------------
// store walking helpers (non-ghost atoms only)

template <class Store, class F>
void for_each_real_atom(Store& s, F&& f) {
  for_each_interior_id(s.box, [&](LatticeId id) {
    auto& a = s.slots[static_cast<std::size_t>(id)];
    if (a.valid && !a.ghost) f(a);
  });
  for (auto& kv : s.clash) {
    if (is_ghost(kv.first, s.box)) continue;
    for (auto& a : kv.second) {
      if (!a.ghost) f(a);
    }
  }
}

inline std::vector<RefAtom> gather_atoms(const LatticeStore& s) {
  std::vector<RefAtom> out;
  for_each_real_atom(s, [&](const AtomRecord& a) {
    out.push_back({a.position, a.tag});
  });
  return out;
}

template <class Store>
auto find_tag(Store& s, std::uint64_t tag) -> decltype(&s.slots[0]) {
  decltype(&s.slots[0]) hit = nullptr;
  for_each_real_atom(s, [&](auto& a) {
    if (a.tag == tag) hit = &a;
  });
  return hit;
}

inline std::map<std::uint64_t, Vec3> forces_by_tag(const LatticeStore& s) {
  std::map<std::uint64_t, Vec3> out;
  for_each_real_atom(s, [&](const AtomRecord& a) { out[a.tag] = a.force; });
  return out;
}

inline std::map<std::uint64_t, double> rho_by_tag(const LatticeStore& s) {
  std::map<std::uint64_t, double> out;
  for_each_real_atom(s, [&](const AtomRecord& a) { out[a.tag] = a.rho_bar; });
  return out;
}

inline std::vector<std::uint64_t> tag_multiset(const LatticeStore& s) {
  std::vector<std::uint64_t> tags;
  for_each_real_atom(s, [&](const AtomRecord& a) { tags.push_back(a.tag); });
  std::sort(tags.begin(), tags.end());
  return tags;
}

inline void rehash(LatticeStore& s) {
  s.canonicalize_positions();
  s.update_hash();
  s.fill_ghosts();
}

// random displacement of every atom, magnitude uniform in [0, amp]
inline void jiggle(LatticeStore& s, double amp, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for_each_real_atom(s, [&](AtomRecord& a) {
    const double z = 2.0 * u01(gen) - 1.0;
    const double phi = 2.0 * 3.14159265358979323846 * u01(gen);
    const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double m = amp * u01(gen);
    a.position += m * Vec3{rxy * std::cos(phi), rxy * std::sin(phi), z};
  });
  rehash(s);
}

// violations of the post-update guarantees: every valid slot atom hashes to
// its own site, every real clash atom hashes to its bucket key, and no real
// clash atom sits under a key whose slot is free
inline long store_invariant_violations(const LatticeStore& s) {
  long bad = 0;
  for_each_interior_id(s.box, [&](LatticeId id) {
    const AtomRecord& a = s.slots[static_cast<std::size_t>(id)];
    if (a.valid && !a.ghost && nearest_site(a.position, s.box) != id) ++bad;
  });
  for (const auto& kv : s.clash) {
    if (is_ghost(kv.first, s.box)) continue;
    for (const AtomRecord& a : kv.second) {
      if (a.ghost) continue;
      if (nearest_site(a.position, s.box) != kv.first) ++bad;
      if (!s.slots[static_cast<std::size_t>(kv.first)].valid) ++bad;
    }
  }
  return bad;
}

// compact structural snapshot for idempotence / fixed-point checks
struct StoreSnapshot {
  std::vector<std::pair<std::uint64_t, Vec3>> slot_atoms;  // by slot id order
  std::vector<std::pair<LatticeId, std::vector<std::uint64_t>>> buckets;

  bool operator==(const StoreSnapshot& o) const {
    if (slot_atoms.size() != o.slot_atoms.size() ||
        buckets.size() != o.buckets.size()) {
      return false;
    }
    for (std::size_t i = 0; i < slot_atoms.size(); ++i) {
      if (slot_atoms[i].first != o.slot_atoms[i].first) return false;
      const Vec3& a = slot_atoms[i].second;
      const Vec3& b = o.slot_atoms[i].second;
      if (a.x != b.x || a.y != b.y || a.z != b.z) return false;
    }
    return buckets == o.buckets;
  }
};

inline StoreSnapshot snapshot(const LatticeStore& s) {
  StoreSnapshot out;
  for_each_interior_id(s.box, [&](LatticeId id) {
    const AtomRecord& a = s.slots[static_cast<std::size_t>(id)];
    if (a.valid && !a.ghost) out.slot_atoms.emplace_back(a.tag, a.position);
  });
  for (const auto& kv : s.clash) {
    if (is_ghost(kv.first, s.box)) continue;
    std::vector<std::uint64_t> tags;
    for (const AtomRecord& a : kv.second) {
      if (!a.ghost) tags.push_back(a.tag);
    }
    if (!tags.empty()) out.buckets.emplace_back(kv.first, std::move(tags));
  }
  return out;
}

}  // namespace testutil
