#include "homckn/group.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "homckn/error.hpp"
#include "homckn/field.hpp"

namespace homckn {

GroupSpec::GroupSpec(std::string name, GroupKind kind, std::vector<double> weights)
    : name_(std::move(name)), kind_(kind), weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::invalid_parameter, "group needs at least one coordinate");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::invalid_parameter, "dilation weights must be positive");
  }
  if (kind_ == GroupKind::heisenberg &&
      (weights_.size() != 3 || weights_[0] != 1.0 || weights_[1] != 1.0 || weights_[2] != 2.0)) {
    throw Error(ErrorCode::unsupported_group, "heisenberg group is modeled only for n = 3, weights (1,1,2)");
  }
}

double GroupSpec::field_coefficient(int j, int i, std::span<const double> x) const {
  if (kind_ != GroupKind::heisenberg || i != 2) return i == j ? 1.0 : 0.0;
  if (j == 0) return -0.5 * x[1];
  if (j == 1) return 0.5 * x[0];
  return 1.0;
}

std::vector<double> GroupSpec::field_coefficients(int j, std::span<const double> x) const {
  std::vector<double> row(weights_.size());
  for (int i = 0; i < dimension(); ++i) row[static_cast<std::size_t>(i)] = field_coefficient(j, i, x);
  return row;
}

namespace {

std::string format_weights(std::span<const double> w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ',';
    os << w[i];
  }
  return os.str();
}

}  // namespace

GroupSpec make_group(GroupKind kind, std::span<const double> params) {
  switch (kind) {
    case GroupKind::abelian_isotropic: {
      if (params.size() != 1 || params[0] < 1.0 || params[0] != std::floor(params[0])) {
        throw Error(ErrorCode::invalid_parameter, "isotropic group takes one positive integer dimension");
      }
      const auto n = static_cast<std::size_t>(params[0]);
      return GroupSpec("r:" + std::to_string(n), kind, std::vector<double>(n, 1.0));
    }
    case GroupKind::abelian_anisotropic: {
      std::vector<double> w(params.begin(), params.end());
      return GroupSpec("aniso:" + format_weights(w), kind, std::move(w));
    }
    case GroupKind::heisenberg:
      if (!params.empty() && !(params.size() == 1 && params[0] == 3.0)) {
        throw Error(ErrorCode::unsupported_group, "heisenberg group is modeled only for n = 3");
      }
      return GroupSpec("heis1", kind, {1.0, 1.0, 2.0});
  }
  throw Error(ErrorCode::unsupported_group, "unknown group kind");
}

GroupSpec parse_group(const std::string& id) {
  auto parse_list = [&](const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_parameter, "cannot parse number '" + item + "' in group id " + id);
      }
    }
    return out;
  };
  if (id == "heis1") return make_group(GroupKind::heisenberg, {});
  if (id.rfind("r:", 0) == 0) {
    const auto n = parse_list(id.substr(2));
    return make_group(GroupKind::abelian_isotropic, n);
  }
  if (id.rfind("aniso:", 0) == 0) {
    const auto w = parse_list(id.substr(6));
    return make_group(GroupKind::abelian_anisotropic, w);
  }
  throw Error(ErrorCode::unsupported_group, "unknown group id '" + id + "'");
}

double homogeneous_dimension(const GroupSpec& spec) {
  return std::accumulate(spec.weights().begin(), spec.weights().end(), 0.0);
}

Point dilate(const GroupSpec& spec, double lambda, std::span<const double> x) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::invalid_parameter, "dilation factor must be positive");
  Point y(x.begin(), x.end());
  for (int i = 0; i < spec.dimension(); ++i) y[static_cast<std::size_t>(i)] *= std::pow(lambda, spec.weight(i));
  return y;
}

std::complex<double> apply_vector_field(const GroupSpec& spec, int j, const ScalarField& f,
                                        std::span<const double> x, DerivativeMode mode) {
  if (j < 0 || j >= spec.dimension()) throw Error(ErrorCode::invalid_parameter, "vector field index out of range");
  const int n = spec.dimension();
  Complex acc = 0.0;
  if (mode == DerivativeMode::analytic) {
    const auto grad = f.gradient(x);
    for (int i = 0; i < n; ++i) acc += spec.field_coefficient(j, i, x) * grad[static_cast<std::size_t>(i)];
    return acc;
  }
  Point probe(x.begin(), x.end());
  for (int i = 0; i < n; ++i) {
    const double c = spec.field_coefficient(j, i, x);
    if (c == 0.0) continue;
    const auto ui = static_cast<std::size_t>(i);
    const double h = 1e-5 * std::max(1.0, std::abs(x[ui]));
    probe[ui] = x[ui] + h;
    const Complex fp = f(probe);
    probe[ui] = x[ui] - h;
    const Complex fm = f(probe);
    probe[ui] = x[ui];
    acc += c * (fp - fm) / (2.0 * h);
  }
  return acc;
}

}  // namespace homckn
