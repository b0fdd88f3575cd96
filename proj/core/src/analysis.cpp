#include "cascademd/analysis.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace cascademd {
namespace {

const char* const symbols[] = {
    "X",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U"};

const char* symbol_for(unsigned z) {
  return z < sizeof(symbols) / sizeof(symbols[0]) ? symbols[z] : "X";
}

struct FileCloser {
  std::FILE* f;
  ~FileCloser() {
    if (f) std::fclose(f);
  }
};

std::FILE* open_or_throw(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  return f;
}

}  // namespace

DefectReport count_defects(const LatticeStore& store) {
  const BoxSpec& b = store.box;
  DefectReport rep;
  for_each_interior_id(b, [&](LatticeId id) {
    if (!store.slots[id].valid) ++rep.vacancies;
  });
  for (const auto& kv : store.clash) {
    if (is_ghost(kv.first, b)) continue;
    const long extra = static_cast<long>(kv.second.size());
    if (extra == 0) continue;
    const long occ = (store.slots[kv.first].valid ? 1 : 0) + extra;
    if (!store.slots[kv.first].valid) --rep.vacancies;  // occupied after all
    rep.interstitials += occ - 1;
  }
  rep.frenkel_pairs = std::max(rep.vacancies, rep.interstitials);
  return rep;
}

double nrt_displacements(double pka_energy_ev, double displacement_energy_ev) {
  if (!(displacement_energy_ev > 0.0)) {
    throw std::invalid_argument("displacement energy must be positive");
  }
  if (pka_energy_ev < displacement_energy_ev) return 0.0;
  const double full = 0.8 * pka_energy_ev / (2.0 * displacement_energy_ev);
  return full < 1.0 ? 1.0 : full;
}

std::string csv_time(double t_ps) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", t_ps);
  std::string s = buf;
  if (s.find_first_of(".eE") == std::string::npos &&
      s.find_first_not_of("-0123456789") == std::string::npos) {
    s += ".0";
  }
  return s;
}

void write_timeseries(const std::string& path,
                      const std::vector<DefectSample>& samples) {
  FileCloser fc{open_or_throw(path)};
  std::fputs("t_ps,vacancies,interstitials,frenkel_pairs\n", fc.f);
  for (const DefectSample& s : samples) {
    std::fprintf(fc.f, "%s,%ld,%ld,%ld\n", csv_time(s.t_ps).c_str(),
                 s.defects.vacancies, s.defects.interstitials,
                 s.defects.frenkel_pairs);
  }
  if (std::ferror(fc.f)) throw std::runtime_error("write failed: " + path);
}

void write_snapshot(const std::string& path, const LatticeStore& store,
                    double t_ps) {
  const BoxSpec& b = store.box;
  const double shift = b.ghost_width * b.a0;
  FileCloser fc{open_or_throw(path)};

  std::fprintf(fc.f, "%ld\n", store.atom_count());
  std::fprintf(fc.f,
               "Lattice=\"%.10g 0 0 0 %.10g 0 0 0 %.10g\" "
               "Properties=species:S:1:pos:R:3:tag:I:1 Time=%s\n",
               b.box_x * b.a0, b.box_y * b.a0, b.box_z * b.a0,
               csv_time(t_ps).c_str());

  const auto emit = [&](const AtomRecord& a) {
    std::fprintf(fc.f, "%s %.10g %.10g %.10g %llu\n", symbol_for(a.species),
                 a.position.x - shift, a.position.y - shift,
                 a.position.z - shift, static_cast<unsigned long long>(a.tag));
  };
  for_each_interior_id(b, [&](LatticeId id) {
    if (store.slots[id].valid) emit(store.slots[id]);
  });
  for (const auto& kv : store.clash) {
    if (is_ghost(kv.first, b)) continue;
    for (const AtomRecord& a : kv.second) emit(a);
  }
  if (std::ferror(fc.f)) throw std::runtime_error("write failed: " + path);
}

}  // namespace cascademd
