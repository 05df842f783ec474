#pragma once

// Output schemas shared by the CLI and the tests. CSV: comma separated, header
// row, LF line endings, doubles with 17 significant digits, no locale.

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "bconv/gamma_lattice.hpp"
#include "bconv/maximality.hpp"
#include "bconv/measure.hpp"
#include "bconv/spectral.hpp"
#include "bconv/transfer.hpp"
#include "bconv/zero_set.hpp"

namespace bconv::io {

std::string format_double(double v);

// index,value_num,value_den,digits  (digits little-endian, ';'-separated)
void write_gamma_csv(std::ostream& out, const SpectrumSpec& spec, std::span<const GammaElement> elements);

// t,value,error_bound,K,D  (one block per scan, in order)
void write_scan_csv(std::ostream& out, std::span<const SpectralScan> scans);

// t,value
void write_grid_function_csv(std::ostream& out, const GridFunction& f);

// iter,sup_dev,seminorm
void write_history_csv(std::ostream& out, const FixedPointRun& run);

// case_tag,attempted,verified
void write_stress_csv(std::ostream& out, const StressReport& report);

nlohmann::json to_json(const ZeroWitness& w);
nlohmann::json to_json(const MaximalityWitness& w);
nlohmann::json to_json(const GramSection& g, const FrameBounds& bounds);

}  // namespace bconv::io
