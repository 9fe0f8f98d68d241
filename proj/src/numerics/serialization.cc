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

#include "phyplan/numerics/serialization.h"

#include <array>
#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace phyplan::numerics {
namespace wire {
namespace {

template <typename U>
void put_le(std::ostream& out, U v) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in) {
  std::array<char, sizeof(U)> bytes{};
  if (!in.read(bytes.data(), bytes.size())) throw std::runtime_error("network record truncated");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    v |= static_cast<U>(static_cast<unsigned char>(bytes[i])) << (8 * i);
  }
  return v;
}

}  // namespace

void put_u8(std::ostream& out, std::uint8_t v) { out.put(static_cast<char>(v)); }
void put_u32(std::ostream& out, std::uint32_t v) { put_le(out, v); }
void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
void put_string(std::ostream& out, std::string_view s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint8_t get_u8(std::istream& in) {
  char c;
  if (!in.get(c)) throw std::runtime_error("network record truncated");
  return static_cast<std::uint8_t>(c);
}
std::uint32_t get_u32(std::istream& in) { return get_le<std::uint32_t>(in); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }
std::string get_string(std::istream& in) {
  const std::uint32_t len = get_u32(in);
  if (len > (1u << 20)) throw std::runtime_error("implausible string length in record");
  std::string s(len, '\0');
  if (!in.read(s.data(), len)) throw std::runtime_error("network record truncated");
  return s;
}

}  // namespace wire

namespace {

Activation activation_from_tag(std::uint8_t tag) {
  switch (tag) {
    case static_cast<std::uint8_t>(Activation::kIdentity): return Activation::kIdentity;
    case static_cast<std::uint8_t>(Activation::kTanh): return Activation::kTanh;
    default: throw std::runtime_error("unknown activation tag " + std::to_string(tag));
  }
}

}  // namespace

void write_network(std::ostream& out, const DenseNetwork& net,
                   std::span<const NamedValue> named_values) {
  out.write(kNetworkMagic.data(), static_cast<std::streamsize>(kNetworkMagic.size()));
  wire::put_u32(out, kNetworkFormatVersion);
  wire::put_u8(out, static_cast<std::uint8_t>(net.hidden_activation()));
  wire::put_u8(out, static_cast<std::uint8_t>(net.output_activation()));
  wire::put_u32(out, static_cast<std::uint32_t>(net.layer_sizes().size()));
  for (std::size_t s : net.layer_sizes()) wire::put_u32(out, static_cast<std::uint32_t>(s));
  for (double p : net.flatten()) wire::put_f64(out, p);
  wire::put_u32(out, static_cast<std::uint32_t>(named_values.size()));
  for (const NamedValue& nv : named_values) {
    wire::put_string(out, nv.name);
    wire::put_f64(out, nv.value);
  }
  if (!out) throw std::runtime_error("failed writing network record");
}

NetworkRecord read_network(std::istream& in) {
  std::string magic(kNetworkMagic.size(), '\0');
  if (!in.read(magic.data(), static_cast<std::streamsize>(magic.size())) || magic != kNetworkMagic) {
    throw std::runtime_error("not a PHYPLAN-NET record");
  }
  const std::uint32_t version = wire::get_u32(in);
  if (version != kNetworkFormatVersion) {
    throw std::runtime_error("unsupported network format version " + std::to_string(version));
  }
  const Activation hidden = activation_from_tag(wire::get_u8(in));
  const Activation output = activation_from_tag(wire::get_u8(in));
  const std::uint32_t num_sizes = wire::get_u32(in);
  if (num_sizes < 2 || num_sizes > 1024) throw std::runtime_error("implausible layer count");
  std::vector<std::size_t> sizes(num_sizes);
  for (auto& s : sizes) s = wire::get_u32(in);

  NetworkRecord record{DenseNetwork(sizes, hidden, output), {}};
  std::vector<double> params(record.net.num_parameters());
  for (double& p : params) p = wire::get_f64(in);
  record.net.assign(params);

  const std::uint32_t num_named = wire::get_u32(in);
  for (std::uint32_t i = 0; i < num_named; ++i) {
    NamedValue nv;
    nv.name = wire::get_string(in);
    nv.value = wire::get_f64(in);
    record.named_values.push_back(std::move(nv));
  }
  return record;
}

}  // namespace phyplan::numerics
