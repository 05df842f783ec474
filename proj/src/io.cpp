#include "bconv/io.hpp"

#include <cstdio>

namespace bconv::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_gamma_csv(std::ostream& out, const SpectrumSpec& spec, std::span<const GammaElement> elements) {
  out << "index,value_num,value_den,digits\n";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& e = elements[i];
    out << i << ',' << e.value.get_num().get_str() << ',' << e.value.get_den().get_str() << ',';
    const auto digits = e.digits(spec);
    for (std::size_t k = 0; k < digits.size(); ++k) {
      if (k) out << ';';
      out << to_compact_string(digits[k]);
    }
    out << '\n';
  }
}

void write_scan_csv(std::ostream& out, std::span<const SpectralScan> scans) {
  out << "t,value,error_bound,K,D\n";
  for (const auto& s : scans) {
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      out << format_double(s.grid[i]) << ',' << format_double(s.values[i]) << ',' << format_double(s.error_bounds[i])
          << ',' << s.digit_depth << ',' << s.product_depth << '\n';
    }
  }
}

void write_grid_function_csv(std::ostream& out, const GridFunction& f) {
  out << "t,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) out << format_double(f.node(i)) << ',' << format_double(f.samples()[i]) << '\n';
}

void write_history_csv(std::ostream& out, const FixedPointRun& run) {
  out << "iter,sup_dev,seminorm\n";
  for (std::size_t i = 0; i < run.sup_deviation.size(); ++i) {
    out << i << ',' << format_double(run.sup_deviation[i]) << ',' << format_double(run.seminorm[i]) << '\n';
  }
}

void write_stress_csv(std::ostream& out, const StressReport& report) {
  out << "case_tag,attempted,verified\n";
  for (const auto tag : kAllCaseTags) {
    const auto& c = report.count(tag);
    out << to_string(tag) << ',' << c.attempted << ',' << c.verified << '\n';
  }
}

nlohmann::json to_json(const ZeroWitness& w) {
  nlohmann::json j;
  j["member"] = w.member;
  j["k"] = w.member ? nlohmann::json(w.k) : nlohmann::json(nullptr);
  j["m"] = w.member ? nlohmann::json(w.m.get_str()) : nlohmann::json(nullptr);
  j["search_bound"] = w.search_bound;
  return j;
}

nlohmann::json to_json(const MaximalityWitness& w) {
  return {{"t", to_fraction_string(w.t)},
          {"gamma", to_fraction_string(w.gamma)},
          {"case_tag", std::string(to_string(w.case_tag))},
          {"verified", w.verified}};
}

nlohmann::json to_json(const GramSection& g, const FrameBounds& bounds) {
  nlohmann::json freqs = nlohmann::json::array();
  for (const auto& f : g.frequencies) freqs.push_back(to_fraction_string(f));
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < g.size(); ++j) row.push_back(g(i, j));
    rows.push_back(std::move(row));
  }
  return {{"frequencies", freqs},
          {"product_depth", g.product_depth},
          {"matrix", rows},
          {"eigen_estimates",
           {{"lower", bounds.lower},
            {"lower_error", bounds.lower_error},
            {"upper", bounds.upper},
            {"upper_error", bounds.upper_error}}}};
}

}  // namespace bconv::io
