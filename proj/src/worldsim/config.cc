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

#include "phyplan/worldsim/config.h"

#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace phyplan::worldsim {
namespace {

namespace pt = boost::property_tree;

constexpr double kDeg = std::numbers::pi / 180.0;

bool is_angle(const std::string& dim) { return dim.rfind("theta", 0) == 0 || dim == "phi"; }

using Binding = std::map<std::string, double*>;

Binding physics_keys(PhysicsParams& p) {
  return {{"g", &p.g},     {"mu", &p.mu}, {"l", &p.l},  {"e", &p.e},
          {"e_c", &p.e_c}, {"m1", &p.m1}, {"m2", &p.m2}};
}

Binding geometry_keys(Geometry& g) {
  return {{"table_height", &g.table_height},
          {"pivot_x", &g.pivot_xy.x()},
          {"pivot_y", &g.pivot_xy.y()},
          {"wedge_x", &g.wedge_contact.x()},
          {"wedge_y", &g.wedge_contact.y()},
          {"wedge_z", &g.wedge_contact.z()},
          {"gap_start", &g.gap_start},
          {"gap_end", &g.gap_end},
          {"bridge_length", &g.bridge_length},
          {"table_edge", &g.table_edge}};
}

double parse_value(const std::string& section, const std::string& key, const std::string& raw) {
  // Inline comments start at ';' or '#'.
  std::string text = raw.substr(0, raw.find_first_of(";#"));
  boost::algorithm::trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("[" + section + "] " + key + ": not a number: '" + text + "'");
  }
}

void apply(const pt::ptree& section_tree, const std::string& section, const Binding& keys) {
  for (const auto& [key, node] : section_tree) {
    const auto it = keys.find(key);
    if (it == keys.end()) throw std::runtime_error("unknown key [" + section + "] " + key);
    *it->second = parse_value(section, key, node.data());
  }
}

void apply_task(const pt::ptree& section_tree, TaskDef& task) {
  const std::string section(task.name());
  for (const auto& [key, node] : section_tree) {
    const double v = parse_value(section, key, node.data());
    if (key == "goal_x") {
      task.goal.center.x() = v;
    } else if (key == "goal_y") {
      task.goal.center.y() = v;
    } else if (key == "goal_z") {
      task.goal.center.z() = v;
    } else if (key == "goal_radius") {
      task.goal.radius = v;
    } else {
      bool matched = false;
      for (ActionDim& d : task.action_dims) {
        const std::string suffix = is_angle(d.name) ? "_deg" : "";
        const double scale = is_angle(d.name) ? kDeg : 1.0;
        if (key == d.name + "_lo" + suffix) {
          d.lo = v * scale;
          matched = true;
        } else if (key == d.name + "_hi" + suffix) {
          d.hi = v * scale;
          matched = true;
        }
      }
      if (!matched) throw std::runtime_error("unknown key [" + section + "] " + key);
    }
  }
}

void finalize(WorldConfig& cfg) {
  for (TaskDef& t : cfg.tasks) {
    t.physics = cfg.physics;
    t.geometry = cfg.geometry;
    t.d_ref = std::max(t.goal.radius, (t.goal.center.head<2>() - t.start_xy()).norm());
    try {
      t.validate();
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("[" + std::string(t.name()) + "] " + e.what());
    }
  }
  if (!(cfg.physics.g > 0.0 && cfg.physics.l > 0.0 && cfg.physics.m1 > 0.0 &&
        cfg.physics.m2 > 0.0 && cfg.physics.mu >= 0.0 && cfg.physics.e >= 0.0 &&
        cfg.physics.e_c >= 0.0)) {
    throw std::runtime_error("[physics] values out of range");
  }
  if (cfg.sigma_velocity < 0.0) throw std::runtime_error("[noise] sigma_velocity must be >= 0");
}

}  // namespace

WorldConfig default_world_config() {
  WorldConfig cfg;
  for (TaskKind k : kAllTasks) cfg.tasks[static_cast<std::size_t>(k)] = make_task(k);
  finalize(cfg);
  return cfg;
}

WorldConfig parse_world_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::runtime_error(std::string("malformed config: ") + e.what());
  }
  WorldConfig cfg = default_world_config();
  for (const auto& [section, body] : tree) {
    if (section == "physics") {
      apply(body, section, physics_keys(cfg.physics));
    } else if (section == "geometry") {
      apply(body, section, geometry_keys(cfg.geometry));
    } else if (section == "noise") {
      apply(body, section, {{"sigma_velocity", &cfg.sigma_velocity}});
    } else {
      TaskKind kind;
      try {
        kind = task_from_string(section);
      } catch (const std::invalid_argument&) {
        throw std::runtime_error("unknown config section [" + section + "]");
      }
      apply_task(body, cfg.tasks[static_cast<std::size_t>(kind)]);
    }
  }
  finalize(cfg);
  return cfg;
}

WorldConfig load_world_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse_world_config(in);
}

void write_world_config(std::ostream& out, const WorldConfig& cfg) {
  WorldConfig copy = cfg;
  out.precision(17);
  out << "[physics]\n";
  for (const auto& [k, v] : physics_keys(copy.physics)) out << k << " = " << *v << '\n';
  out << "\n[geometry]\n";
  for (const auto& [k, v] : geometry_keys(copy.geometry)) out << k << " = " << *v << '\n';
  out << "\n[noise]\nsigma_velocity = " << cfg.sigma_velocity << '\n';
  for (const TaskDef& t : cfg.tasks) {
    out << "\n[" << t.name() << "]\n";
    out << "goal_x = " << t.goal.center.x() << "\ngoal_y = " << t.goal.center.y()
        << "\ngoal_z = " << t.goal.center.z() << "\ngoal_radius = " << t.goal.radius << '\n';
    for (const ActionDim& d : t.action_dims) {
      const bool angle = is_angle(d.name);
      const double s = angle ? 1.0 / kDeg : 1.0;
      const std::string suffix = angle ? "_deg" : "";
      out << d.name << "_lo" << suffix << " = " << d.lo * s << '\n';
      out << d.name << "_hi" << suffix << " = " << d.hi * s << '\n';
    }
  }
}

}  // namespace phyplan::worldsim
