#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lefrank/cohomology.hpp"
#include "lefrank/constructions.hpp"

namespace lefrank {

// Symplectic fibration data seen from the fiber: its cohomology with the
// fiber class, and the betti numbers of the base.  base_truncated marks a
// base known only through the listed degrees.
struct FibrationSpec {
  SymplecticData fiber;
  std::vector<int> base_betti;
  bool base_truncated = false;
  std::optional<int> forced_start_page;
};

inline Verdict validate_fibration(const FibrationSpec& spec) {
  Verdict fv = validate_symplectic(spec.fiber);
  if (!fv) return fv;
  if (spec.base_betti.empty()) return verdict_fail("base betti table is empty");
  for (int b : spec.base_betti)
    if (b < 0) return verdict_fail("negative base betti number");
  if (spec.base_betti[0] < 1) return verdict_fail("base must be connected");
  if (spec.forced_start_page && *spec.forced_start_page < 2)
    return verdict_fail("start page must be at least 2");
  return {};
}

struct DegenerationCertificate {
  bool certified = false;
  std::string route = "none";  // "hard-lefschetz" | "weak-lefschetz" | "none"
  int r0 = 0;
  int lo = 0;
  int hi = 0;
  std::vector<std::string> axioms;
  std::vector<int> total_betti;
  bool truncated = false;
  std::vector<std::string> reason;
};

// Second page as a module for the fiber class: fiber cohomology tensored
// with the base contribution, which carries no weight and no raising action.
inline BModule e2_page(const FibrationSpec& spec) {
  Verdict v = validate_fibration(spec);
  if (!v) throw invalid_input("e2_page: " + v.message);
  int base_total = 0;
  for (int b : spec.base_betti) base_total += b;
  return tensor(lefschetz_bmodule(spec.fiber), trivial_bmodule(0, base_total));
}

// The page r differential commutes with the raising operator and lowers the
// fiber weight by r - 1, hence lowers the filtration level by r - 1.  When
// the filtration jumps live in a window narrower than that, every such
// differential starts and ends in the same vanishing range and the sequence
// stops.
inline DegenerationCertificate gap_certificate(const BModule& module, int r0) {
  if (r0 < 2) throw invalid_input("gap_certificate: start page must be at least 2");
  DegenerationCertificate cert;
  auto [lo, hi] = saturation_level(module);
  cert.lo = lo;
  cert.hi = hi;
  cert.r0 = r0;
  cert.reason.push_back("filtration saturation: lo=" + std::to_string(lo) +
                        " hi=" + std::to_string(hi) + " (gap " + std::to_string(hi - lo) +
                        ")");
  cert.reason.push_back(
      "a page-" + std::to_string(r0) +
      " differential commutes with the raising operator and lowers the filtration level by " +
      std::to_string(r0 - 1));
  if (hi - lo < r0 - 1) {
    cert.certified = true;
    cert.reason.push_back("gap " + std::to_string(hi - lo) + " < " + std::to_string(r0 - 1) +
                          ": every differential from page " + std::to_string(r0) +
                          " on leaves the jump window and vanishes; the sequence "
                          "degenerates there");
  } else {
    cert.certified = false;
    cert.reason.push_back("gap " + std::to_string(hi - lo) + " >= " + std::to_string(r0 - 1) +
                          ": the level argument cannot exclude a nonzero differential on page " +
                          std::to_string(r0));
  }
  return cert;
}

// Chain supports of source and target levels for the page r differential;
// when they are disjoint at every level the differential vanishes for plain
// representation theoretic reasons.  Advisory only: the gap certificate does
// not consume this.
struct PageSchurLine {
  int m = 0;
  std::vector<int> source;
  std::vector<int> target;
  bool forced_zero = false;
};

inline std::vector<PageSchurLine> schur_report(const BModule& module, int r) {
  if (r < 2) throw invalid_input("schur_report: page must be at least 2");
  CanonicalFiltration f = canonical_filtration(module);
  std::vector<PageSchurLine> lines;
  if (module.is_zero()) return lines;
  for (int m = f.lo; m <= f.hi; ++m) {
    PageSchurLine line;
    line.m = m;
    for (const auto& [d, c] : decompose_g(graded_piece(f, m))) line.source.push_back(d);
    int target_level = m - (r - 1);
    if (target_level >= f.lo && target_level <= f.hi)
      for (const auto& [d, c] : decompose_g(graded_piece(f, target_level)))
        line.target.push_back(d);
    bool meet = false;
    for (int d : line.source)
      for (int d2 : line.target)
        if (d == d2) meet = true;
    line.forced_zero = !meet;
    lines.push_back(line);
  }
  return lines;
}

// Decides degeneration of the fiber spectral sequence over a simply
// connected base from the fiber alone.  A hard Lefschetz fiber starts the
// argument at page 2 outright; a weak Lefschetz fiber starts it at page 4,
// which leans on the vanishing of the page 2 and 3 differentials recorded in
// the axioms list.  A forced start page replaces this route selection.
inline DegenerationCertificate certify_csplitting(const FibrationSpec& spec) {
  Verdict v = validate_fibration(spec);
  if (!v) throw invalid_input("certify_csplitting: " + v.message);
  BModule fiber_module = lefschetz_bmodule(spec.fiber);
  auto [flo, fhi] = saturation_level(fiber_module);
  BModule page = e2_page(spec);
  auto [plo, phi] = saturation_level(page);
  internal_check(plo == flo && phi == fhi,
                 "tensoring with the weightless base factor moved the jump levels");
  int n = spec.fiber.ring.dim / 2;
  bool hard = module_hard_lefschetz(fiber_module, n);
  bool weak = module_weak_lefschetz(fiber_module, n);
  internal_check(hard == (flo == fhi), "hard verdict disagrees with the filtration gap");
  internal_check(weak == (fhi <= n + 1), "weak verdict disagrees with the saturation level");

  DegenerationCertificate cert;
  int r0 = 0;
  if (hard) {
    cert.route = "hard-lefschetz";
    r0 = 2;
    cert.reason.push_back("fiber satisfies hard Lefschetz: every iterated raising map "
                          "from below half degree is onto");
  } else if (weak) {
    cert.route = "weak-lefschetz";
    r0 = 4;
    cert.axioms.push_back("lalonde-mcduff-pages-2-3");
    cert.reason.push_back(
        "fiber satisfies weak Lefschetz; the page 2 and 3 differentials vanish by the "
        "recorded axiom, so the argument starts at page 4");
  } else {
    cert.route = "none";
    for (int k = 1; n + 1 + k <= spec.fiber.ring.dim; ++k) {
      int target = spec.fiber.ring.betti_at(n + 1 + k);
      if (target == 0) continue;
      int got = static_cast<int>(rank(e_power(fiber_module, n + 1 - k, k)));
      if (got < target) {
        cert.reason.push_back("omega^" + std::to_string(k) + ": H^" +
                              std::to_string(n + 1 - k) + " -> H^" + std::to_string(n + 1 + k) +
                              " has rank " + std::to_string(got) + ", needs " +
                              std::to_string(target));
        break;
      }
    }
  }
  if (spec.forced_start_page) {
    r0 = *spec.forced_start_page;
    cert.axioms.push_back("caller-asserted-start-page-" + std::to_string(r0));
    cert.reason.push_back("start page " + std::to_string(r0) +
                          " forced by the caller; vanishing below it is assumed, not derived");
  }
  if (r0 == 0) {
    cert.certified = false;
    cert.r0 = 0;
    cert.lo = flo;
    cert.hi = fhi;
    cert.reason.push_back("no route establishes a start page; not certified");
    cert.truncated = spec.base_truncated;
    return cert;
  }
  DegenerationCertificate gap = gap_certificate(page, r0);
  cert.certified = gap.certified;
  cert.r0 = r0;
  cert.lo = gap.lo;
  cert.hi = gap.hi;
  for (const auto& line : gap.reason) cert.reason.push_back(line);
  cert.truncated = spec.base_truncated;
  if (cert.certified) {
    // Degeneration makes the total betti numbers the exact convolution.
    std::size_t fiber_len = spec.fiber.ring.betti.size();
    std::size_t out_len = spec.base_truncated
                              ? spec.base_betti.size()
                              : fiber_len + spec.base_betti.size() - 1;
    cert.total_betti.assign(out_len, 0);
    for (std::size_t i = 0; i < fiber_len; ++i)
      for (std::size_t j = 0; j < spec.base_betti.size(); ++j)
        if (i + j < out_len)
          cert.total_betti[i + j] += spec.fiber.ring.betti[i] * spec.base_betti[j];
    if (spec.base_truncated)
      cert.reason.push_back("base betti table is truncated; total betti numbers reported "
                            "only for degrees it covers");
  }
  return cert;
}

}  // namespace lefrank
