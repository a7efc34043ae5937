#include "nschsim/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace nschsim {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string join_csv(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  return s;
}

// key=value token in the header line; list values are comma-joined.
std::string expect_token(std::istringstream& in, const std::string& key) {
  std::string tok;
  if (!(in >> tok) || tok.rfind(key + "=", 0) != 0) {
    throw ValidationError("field file: malformed header, expected " + key +
                          "=...");
  }
  return tok.substr(key.size() + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_field(const std::string& path, const Field& field, double t,
                 const std::string& name) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("field file: cannot open for writing: " + path);
  }
  const Grid& g = field.grid();
  std::vector<std::string> cells, lengths;
  for (int a = 0; a < g.dim(); ++a) {
    cells.push_back(std::to_string(g.cells(a)));
    lengths.push_back(format_double(g.length(a)));
  }
  out << "# nschsim-field v1 dim=" << g.dim() << " cells=" << join_csv(cells)
      << " lengths=" << join_csv(lengths) << " t=" << format_double(t)
      << " name=" << name << "\n";
  for (double v : field.values()) {
    out << format_double(v) << "\n";
  }
  if (!out) {
    throw ValidationError("field file: write failed: " + path);
  }
}

FieldSnapshot read_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("field file: cannot open: " + path);
  }
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string hash, magic;
  hs >> hash >> magic;
  if (hash != "#" || magic != "nschsim-field") {
    throw ValidationError("field file: missing 'nschsim-field' magic: " + path);
  }
  std::string version;
  hs >> version;
  if (version != "v1") {
    throw ValidationError("field file: unsupported version: " + version);
  }
  const int dim = std::stoi(expect_token(hs, "dim"));
  const auto cell_tokens = split_commas(expect_token(hs, "cells"));
  const auto length_tokens = split_commas(expect_token(hs, "lengths"));
  if (static_cast<int>(cell_tokens.size()) != dim ||
      static_cast<int>(length_tokens.size()) != dim) {
    throw ValidationError("field file: cells/lengths do not match dim");
  }
  std::vector<int> cells;
  std::vector<double> lengths;
  for (const auto& tok : cell_tokens) cells.push_back(std::stoi(tok));
  for (const auto& tok : length_tokens) lengths.push_back(std::stod(tok));

  FieldSnapshot snap;
  snap.t = std::stod(expect_token(hs, "t"));
  snap.name = expect_token(hs, "name");

  Grid grid(cells, lengths);
  std::vector<double> values;
  values.reserve(grid.total_nodes());
  double v;
  while (in >> v) values.push_back(v);
  if (values.size() != grid.total_nodes()) {
    throw ValidationError("field file: expected " +
                          std::to_string(grid.total_nodes()) + " values, got " +
                          std::to_string(values.size()) + ": " + path);
  }
  snap.field = Field(std::move(grid), std::move(values));
  return snap;
}

}  // namespace nschsim
