#pragma once
// BPS spectrum tables, DT invariants and f-coefficients.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wc/lattice.hpp"
#include "wc/rational.hpp"

namespace wc {

struct TruncationError : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct UnknownSpectrum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Coupling { Strong, Weak };
const char* coupling_name(Coupling c);
Coupling parse_coupling(const std::string& s);

// Charges base + k*step for k = 0, 1, ..., all with the same index.
struct Family {
  Charge base;
  Charge step;
  long omega = 0;
  std::string label;
};

struct SpectrumTable {
  std::string theory;
  Coupling coupling = Coupling::Strong;
  std::map<Charge, long> entries;
  std::vector<Family> families;
  // largest family index available to lookups and enumeration
  int K = 10;
  // false when the listed states are known to be only part of the spectrum
  bool complete = true;

  // positive-side support: entries plus family members with index <= K
  std::vector<std::pair<Charge, long>> support() const;
};

long omega(const SpectrumTable& t, const Charge& g);
Q dt(const SpectrumTable& t, const Charge& g);

// f^g = coef * direction, times sigma(g) when `sigma` is set
struct FCoeff {
  Q coef;
  Charge direction;
  bool sigma = false;
};
FCoeff f_coeff(const Theory& th, const SpectrumTable& t, const Charge& g);

// Every basis direction with Omega = 1.
SpectrumTable strong_table(const Theory& th);

std::string data_dir();
SpectrumTable spectrum_from_json(const std::string& text);
std::string spectrum_to_json(const SpectrumTable& t, const Theory* th = nullptr);
SpectrumTable load_spectrum(const std::string& path);
// data/spectra/<theory>_<coupling>.json
SpectrumTable builtin_spectrum(const std::string& theory, Coupling c, int K = 10);

}  // namespace wc
