#pragma once

#include <string>
#include <vector>

#include "cascademd/store.h"

namespace cascademd {

// Wigner-Seitz style defect count: a site with no atom hashed to it is a
// vacancy, every atom beyond the first at one site is an interstitial.
struct DefectReport {
  long vacancies = 0;
  long interstitials = 0;
  long frenkel_pairs = 0;  // max of the two (equal for a closed box)
};

DefectReport count_defects(const LatticeStore& store);

// NRT displacement estimate: 0 below the threshold, 1 up to 2*Ed/0.8, then
// 0.8 * E / (2 * Ed)
double nrt_displacements(double pka_energy_ev, double displacement_energy_ev);

struct DefectSample {
  double t_ps = 0.0;
  DefectReport defects;
};

// a number formatted %.9g, given a trailing ".0" when it would otherwise
// print as a bare integer, so every timestamp in the CSV reads as a real
std::string csv_time(double t_ps);

// CSV with the exact header t_ps,vacancies,interstitials,frenkel_pairs;
// rewrites the whole file each call
void write_timeseries(const std::string& path,
                      const std::vector<DefectSample>& samples);

// Extended XYZ snapshot of the non-ghost atoms: count line, then a
// Lattice="..." Properties=species:S:1:pos:R:3:tag:I:1 Time=... comment,
// then one line per atom with positions in the box frame (%.10g).  Slot
// atoms come first in site-id order, clash atoms after in (site, index)
// order, so identical states serialize identically.
void write_snapshot(const std::string& path, const LatticeStore& store,
                    double t_ps);

}  // namespace cascademd
