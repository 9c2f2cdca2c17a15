// Copyright 2026 The hamest Authors
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

#include "hamest/family.hpp"

#include <cmath>
#include <sstream>

#include "hamest/errors.hpp"

namespace hamest {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

HermitianMatrix checked_coefficient(const nlohmann::json& j, const std::string& where) {
  ComplexMatrix m = matrix_from_json(j, where);
  const double residual = hermiticity_residual(m);
  if (residual > Tolerances::hermitian) {
    std::ostringstream msg;
    msg << where << " is not Hermitian (max |A - A^dagger| = " << residual << ")";
    throw Error(ErrorKind::NotHermitian, msg.str());
  }
  return HermitianMatrix(std::move(m));
}

}  // namespace

HamiltonianFamily HamiltonianFamily::multiplicative(HermitianMatrix h) {
  const Eigen::Index dim = h.dim();
  return HamiltonianFamily(Multiplicative{std::move(h)}, dim);
}

HamiltonianFamily HamiltonianFamily::direction_field(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw Error(ErrorKind::InvalidArgument, "field strength B must be positive");
  return HamiltonianFamily(DirectionField{b}, 2);
}

HamiltonianFamily HamiltonianFamily::trig_matrix(HermitianMatrix constant, std::vector<Harmonic> harmonics) {
  const Eigen::Index dim = constant.dim();
  for (std::size_t k = 0; k < harmonics.size(); ++k) {
    if (harmonics[k].cos_part.dim() != dim || harmonics[k].sin_part.dim() != dim) {
      std::ostringstream msg;
      msg << "harmonic " << k + 1 << " has a different dimension from A0 (" << dim << ")";
      throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
  }
  return HamiltonianFamily(TrigMatrix{std::move(constant), std::move(harmonics)}, dim);
}

std::string HamiltonianFamily::kind_name() const {
  return std::visit(Overloaded{[](const Multiplicative&) { return std::string("multiplicative"); },
                               [](const DirectionField&) { return std::string("direction_field"); },
                               [](const TrigMatrix&) { return std::string("trig_matrix"); }},
                    payload_);
}

HermitianMatrix HamiltonianFamily::evaluate(double x) const {
  return std::visit(
      Overloaded{[&](const Multiplicative& p) { return HermitianMatrix::hermitize(x * p.h.matrix()); },
                 [&](const DirectionField& p) {
                   return HermitianMatrix::hermitize(p.b * (std::cos(x) * sigma1() + std::sin(x) * sigma3()));
                 },
                 [&](const TrigMatrix& p) {
                   ComplexMatrix h = p.constant.matrix();
                   for (std::size_t k = 0; k < p.harmonics.size(); ++k) {
                     const double order = static_cast<double>(k + 1);
                     h += std::cos(order * x) * p.harmonics[k].cos_part.matrix() +
                          std::sin(order * x) * p.harmonics[k].sin_part.matrix();
                   }
                   return HermitianMatrix::hermitize(h);
                 }},
      payload_);
}

HermitianMatrix HamiltonianFamily::derivative(double x) const {
  return std::visit(
      Overloaded{[&](const Multiplicative& p) { return p.h; },
                 [&](const DirectionField& p) {
                   return HermitianMatrix::hermitize(p.b * (-std::sin(x) * sigma1() + std::cos(x) * sigma3()));
                 },
                 [&](const TrigMatrix& p) {
                   ComplexMatrix h = ComplexMatrix::Zero(dim_, dim_);
                   for (std::size_t k = 0; k < p.harmonics.size(); ++k) {
                     const double order = static_cast<double>(k + 1);
                     h += order * (-std::sin(order * x) * p.harmonics[k].cos_part.matrix() +
                                   std::cos(order * x) * p.harmonics[k].sin_part.matrix());
                   }
                   return HermitianMatrix::hermitize(h);
                 }},
      payload_);
}

UnitaryMatrix HamiltonianFamily::unitary_at(double x, double t) const {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "evolution time must be non-negative");
  return expm_i(evaluate(x), t);
}

void EvolutionParams::validate() const {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "x must be finite");
  if (!(total_time > 0.0)) throw Error(ErrorKind::InvalidArgument, "T must be positive");
  if (!(segment_time > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  if (!(dx > 0.0)) throw Error(ErrorKind::InvalidArgument, "dx must be positive");
}

double direction_field_qfi_closed_form(double b, double total_time) {
  const double s = std::sin(b * total_time);
  return 4.0 * s * s;
}

double cos_bprime(double b, double total_time, double dx) {
  const double c = std::cos(b * total_time);
  const double s = std::sin(b * total_time);
  return c * c + std::cos(dx) * s * s;
}

double direction_field_feedback_closed_form(double b, double total_time, int segments) {
  if (segments < 1) throw Error(ErrorKind::InvalidArgument, "segment count must be >= 1");
  const double m = static_cast<double>(segments);
  const double s = std::sin(b * total_time / m);
  return 4.0 * m * m * s * s;
}

double universal_qfi(const HamiltonianFamily& family, double x, double total_time) {
  if (!(total_time > 0.0)) throw Error(ErrorKind::InvalidArgument, "T must be positive");
  const double spread = hermitian_eig(family.derivative(x)).spread();
  return total_time * total_time * spread * spread;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::InvalidArgument, where + " must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw Error(ErrorKind::InvalidArgument, where + " must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        std::ostringstream msg;
        msg << where << "[" << r << "][" << c << "] must be a number or an [re, im] pair";
        throw Error(ErrorKind::InvalidArgument, msg.str());
      }
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

HamiltonianFamily family_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorKind::InvalidArgument, "family must be an object with a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "direction_field" || kind == "direction-field") {
    const double b = j.contains("B") ? j["B"].get<double>() : 1.0;
    return HamiltonianFamily::direction_field(b);
  }
  if (kind == "multiplicative") {
    if (!j.contains("H")) return HamiltonianFamily::multiplicative(HermitianMatrix(sigma3()));
    return HamiltonianFamily::multiplicative(checked_coefficient(j["H"], "H"));
  }
  if (kind == "trig_matrix" || kind == "trig-matrix") {
    if (!j.contains("A0")) throw Error(ErrorKind::InvalidArgument, "trig_matrix family needs \"A0\"");
    HermitianMatrix constant = checked_coefficient(j["A0"], "A0");
    std::vector<Harmonic> harmonics;
    if (j.contains("harmonics")) {
      const auto& hs = j["harmonics"];
      if (!hs.is_array()) throw Error(ErrorKind::InvalidArgument, "\"harmonics\" must be an array");
      for (std::size_t k = 0; k < hs.size(); ++k) {
        const std::string prefix = "harmonics[" + std::to_string(k) + "]";
        const ComplexMatrix zero = ComplexMatrix::Zero(constant.dim(), constant.dim());
        HermitianMatrix cos_part =
            hs[k].contains("cos") ? checked_coefficient(hs[k]["cos"], prefix + ".cos") : HermitianMatrix(zero);
        HermitianMatrix sin_part =
            hs[k].contains("sin") ? checked_coefficient(hs[k]["sin"], prefix + ".sin") : HermitianMatrix(zero);
        harmonics.push_back({std::move(cos_part), std::move(sin_part)});
      }
    }
    return HamiltonianFamily::trig_matrix(std::move(constant), std::move(harmonics));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family kind \"" + kind + "\"");
}

nlohmann::json family_to_json(const HamiltonianFamily& family) {
  return std::visit(
      Overloaded{[](const Multiplicative& p) {
                   return nlohmann::json{{"kind", "multiplicative"}, {"H", matrix_to_json(p.h.matrix())}};
                 },
                 [](const DirectionField& p) { return nlohmann::json{{"kind", "direction_field"}, {"B", p.b}}; },
                 [](const TrigMatrix& p) {
                   nlohmann::json hs = nlohmann::json::array();
                   for (const auto& h : p.harmonics)
                     hs.push_back({{"cos", matrix_to_json(h.cos_part.matrix())},
                                   {"sin", matrix_to_json(h.sin_part.matrix())}});
                   return nlohmann::json{
                       {"kind", "trig_matrix"}, {"A0", matrix_to_json(p.constant.matrix())}, {"harmonics", hs}};
                 }},
      family.payload());
}

}  // namespace hamest
