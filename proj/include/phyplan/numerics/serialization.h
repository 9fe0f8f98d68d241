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

#ifndef PHYPLAN_NUMERICS_SERIALIZATION_H_
#define PHYPLAN_NUMERICS_SERIALIZATION_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phyplan/numerics/dense_network.h"

namespace phyplan::numerics {

// On-disk network record, all integers and doubles little-endian:
//
//   magic        11 bytes  "PHYPLAN-NET"
//   version      u32       kNetworkFormatVersion
//   hidden act   u8        Activation tag
//   output act   u8        Activation tag
//   num sizes    u32
//   sizes        u32 x num sizes
//   params       f64 x num_parameters(), flattening order of DenseNetwork
//   num named    u32
//   named        repeated { u32 name length, name bytes, f64 value }
//
// See docs/FORMATS.md.
inline constexpr std::string_view kNetworkMagic = "PHYPLAN-NET";
inline constexpr std::uint32_t kNetworkFormatVersion = 1;

struct NamedValue {
  std::string name;
  double value = 0.0;

  bool operator==(const NamedValue&) const = default;
};

struct NetworkRecord {
  DenseNetwork net;
  std::vector<NamedValue> named_values;
};

void write_network(std::ostream& out, const DenseNetwork& net,
                   std::span<const NamedValue> named_values);
// Throws std::runtime_error on a bad magic, unsupported version or truncation.
NetworkRecord read_network(std::istream& in);

// Little-endian primitives shared with the skill model format.
namespace wire {
void put_u8(std::ostream& out, std::uint8_t v);
void put_u32(std::ostream& out, std::uint32_t v);
void put_f64(std::ostream& out, double v);
void put_string(std::ostream& out, std::string_view s);
std::uint8_t get_u8(std::istream& in);
std::uint32_t get_u32(std::istream& in);
double get_f64(std::istream& in);
std::string get_string(std::istream& in);
}  // namespace wire

}  // namespace phyplan::numerics

#endif  // PHYPLAN_NUMERICS_SERIALIZATION_H_
