#include "chernoff/operator.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace chernoff {

void ensure_finite(const Matrix& m, const char* where) {
  if (!m.allFinite()) {
    throw NonFinite(std::string(where) + ": matrix has NaN/Inf entries");
  }
}

Operator::Operator(Matrix m) : mat_(std::move(m)) {
  if (mat_.rows() == 0 || mat_.rows() != mat_.cols()) {
    throw Error("Operator: matrix must be square and nonempty");
  }
  ensure_finite(mat_, "Operator");
}

Operator Operator::identity(Eigen::Index d) {
  return Operator(Matrix::Identity(d, d));
}

Operator Operator::zero(Eigen::Index d) { return Operator(Matrix::Zero(d, d)); }

bool Operator::approx_equal(const Operator& other, double tol) const {
  if (dim() != other.dim()) return false;
  return (mat_ - other.mat_).cwiseAbs().maxCoeff() <= tol;
}

std::string Operator::to_json_string() const {
  nlohmann::ordered_json j;
  const Eigen::Index d = dim();
  j["dim"] = d;
  auto re = nlohmann::ordered_json::array();
  auto im = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < d; ++i) {
    auto row_re = nlohmann::ordered_json::array();
    auto row_im = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < d; ++k) {
      row_re.push_back(mat_(i, k).real());
      row_im.push_back(mat_(i, k).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j.dump();
}

namespace {

Operator operator_from_json(const nlohmann::json& j) {
  if (!j.contains("dim") || !j.contains("re")) {
    throw Error("matrix JSON: expected keys dim and re (im optional)");
  }
  const Eigen::Index d = j.at("dim").get<Eigen::Index>();
  if (d <= 0) throw Error("matrix JSON: dim must be positive");
  const auto& re = j.at("re");
  const bool has_im = j.contains("im");
  if (re.size() != static_cast<std::size_t>(d)) {
    throw Error("matrix JSON: re has wrong row count");
  }
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto& row_re = re.at(i);
    if (row_re.size() != static_cast<std::size_t>(d)) {
      throw Error("matrix JSON: re row has wrong length");
    }
    for (Eigen::Index k = 0; k < d; ++k) {
      double x = row_re.at(k).get<double>();
      double y = has_im ? j.at("im").at(i).at(k).get<double>() : 0.0;
      m(i, k) = Complex(x, y);
    }
  }
  return Operator(std::move(m));
}

}  // namespace

Operator Operator::from_json_string(const std::string& text) {
  return operator_from_json(nlohmann::json::parse(text));
}

Operator Operator::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_string(ss.str());
}

}  // namespace chernoff
