// Copyright 2026 The PhyPlan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phyplan/skills/dataset.h"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/algorithm/string.hpp>

namespace phyplan::skills {
namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": bad number '" + std::string(s) +
                             "'");
  }
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, line, boost::algorithm::is_any_of(","));
  for (auto& p : parts) boost::algorithm::trim(p);
  return parts;
}

std::vector<std::string> header_of(const SkillSpec& spec) {
  std::vector<std::string> h = spec.input_fields;
  h.insert(h.end(), spec.output_fields.begin(), spec.output_fields.end());
  return h;
}

void parse_provenance(const std::string& comment, DatasetProvenance& prov) {
  std::istringstream ss(comment.substr(1));
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "generator") {
      prov.generator = value;
    } else if (key == "noise_sigma") {
      prov.noise_sigma = std::stod(value);
    } else if (key == "seed") {
      prov.seed = std::stoull(value);
    }
  }
}

}  // namespace

void Dataset::validate() const {
  const SkillSpec spec = build_skill(skill);
  if (static_cast<std::size_t>(inputs.rows()) != spec.input_dim() ||
      static_cast<std::size_t>(targets.rows()) != spec.output_dim() ||
      inputs.cols() != targets.cols()) {
    throw std::invalid_argument("dataset shape does not match the " + std::string(spec.name()) +
                                " schema");
  }
}

Dataset Dataset::slice(Eigen::Index first, Eigen::Index count) const {
  Dataset d;
  d.skill = skill;
  d.provenance = provenance;
  d.inputs = inputs.middleCols(first, count);
  d.targets = targets.middleCols(first, count);
  return d;
}

CollocationSet sample_collocation(const std::vector<FieldBounds>& bounds, Eigen::Index n,
                                  std::uint64_t seed) {
  CollocationSet c;
  c.bounds = bounds;
  c.points.resize(static_cast<Eigen::Index>(bounds.size()), n);
  std::mt19937_64 rng(seed);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      std::uniform_real_distribution<double> u(bounds[i].lo, bounds[i].hi);
      c.points(static_cast<Eigen::Index>(i), j) = u(rng);
    }
  }
  return c;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  data.validate();
  const SkillSpec spec = build_skill(data.skill);
  out << "# skill=" << spec.name() << " generator=" << data.provenance.generator
      << " noise_sigma=" << format_double(data.provenance.noise_sigma)
      << " seed=" << data.provenance.seed << '\n';
  out << boost::algorithm::join(header_of(spec), ",") << '\n';
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    for (Eigen::Index i = 0; i < data.inputs.rows(); ++i) {
      out << format_double(data.inputs(i, j)) << ',';
    }
    for (Eigen::Index i = 0; i < data.targets.rows(); ++i) {
      out << format_double(data.targets(i, j)) << (i + 1 < data.targets.rows() ? ',' : '\n');
    }
  }
  if (!out) throw std::runtime_error("failed writing dataset");
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_dataset_csv(out, data);
}

Dataset read_dataset_csv(std::istream& in, SkillKind skill) {
  const SkillSpec spec = build_skill(skill);
  const std::vector<std::string> expected = header_of(spec);
  Dataset d;
  d.skill = skill;

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      parse_provenance(line, d.provenance);
      continue;
    }
    const auto fields = split_fields(line);
    if (!have_header) {
      if (fields != expected) {
        throw std::runtime_error("header '" + line + "' does not match the " +
                                 std::string(spec.name()) + " schema '" +
                                 boost::algorithm::join(expected, ",") + "'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != expected.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(expected.size()) + " fields");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f, line_no));
    rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("dataset has no header");

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto in_dim = static_cast<Eigen::Index>(spec.input_dim());
  const auto out_dim = static_cast<Eigen::Index>(spec.output_dim());
  d.inputs.resize(in_dim, n);
  d.targets.resize(out_dim, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& r = rows[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < in_dim; ++i) d.inputs(i, j) = r[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i < out_dim; ++i) {
      d.targets(i, j) = r[static_cast<std::size_t>(in_dim + i)];
    }
  }
  return d;
}

Dataset read_dataset_csv(const std::filesystem::path& path, SkillKind skill) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path.string());
  return read_dataset_csv(in, skill);
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    for (SkillKind k : kAllSkills) {
      if (header_of(build_skill(k)) == fields) {
        in.clear();
        in.seekg(0);
        return read_dataset_csv(in, k);
      }
    }
    throw std::runtime_error("header '" + line + "' matches no skill schema");
  }
  throw std::runtime_error("dataset " + path.string() + " has no header");
}

}  // namespace phyplan::skills
