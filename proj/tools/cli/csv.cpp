#include "csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace barypoly::cli {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& traj) {
  const std::size_t p = traj.initial.size();
  out << "m";
  for (std::size_t k = 1; k <= p; ++k) out << ",u_" << k;
  out << ",spread,phase";
  for (std::size_t k = 1; k <= p; ++k) out << ",one_minus_u_" << k;
  out << '\n';
  for (std::size_t m = 0; m < traj.size(); ++m) {
    const ConjugateTuple& u = traj.states[m];
    out << m;
    for (std::size_t k = 0; k < p; ++k) out << ',' << u.pair(k).value.to_exact_string();
    out << ',' << format_double(traj.spread[m]) << ',' << to_string(traj.phase[m]);
    for (std::size_t k = 0; k < p; ++k) out << ',' << u.pair(k).complement.to_exact_string();
    out << '\n';
  }
}

std::vector<ConjugateTuple> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("trajectory csv: empty input");
  const auto header = split(line);
  if (header.size() < 3 || header.front() != "m" || (header.size() - 3) % 2 != 0) {
    throw std::invalid_argument("trajectory csv: unexpected header");
  }
  const std::size_t p = (header.size() - 3) / 2;

  std::vector<ConjugateTuple> states;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw std::invalid_argument("trajectory csv: row " + std::to_string(row) +
                                  " has " + std::to_string(fields.size()) + " fields");
    }
    std::vector<ComplementPair> pairs;
    pairs.reserve(p);
    for (std::size_t k = 0; k < p; ++k) {
      pairs.push_back({ExtendedReal::parse(fields[1 + k]),
                       ExtendedReal::parse(fields[p + 3 + k])});
    }
    states.emplace_back(std::move(pairs));
  }
  return states;
}

void write_dual_csv(std::ostream& out, const DualSequenceRecord& dual) {
  const std::size_t dim = dual.points.empty() ? 0 : dual.points.front().size();
  out << "m";
  for (std::size_t i = 1; i <= dim; ++i) out << ",g_" << i;
  out << ",distance\n";
  for (std::size_t m = 0; m < dual.points.size(); ++m) {
    out << m;
    for (double x : dual.points[m]) out << ',' << format_double(x);
    out << ',' << format_double(dual.distances_to_centroid[m]) << '\n';
  }
  out << "# fitted_rate=" << (dual.fitted_rate ? format_double(*dual.fitted_rate) : "none")
      << '\n';
}

}  // namespace barypoly::cli
