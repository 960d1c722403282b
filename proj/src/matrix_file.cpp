#include "canon/matrix_file.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace canon {

namespace {

using nlohmann::json;

double number_at(const json& v, const char* what) {
  if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string(what) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, std::string(what) + " is not finite");
  return x;
}

Eigen::Index count_at(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

}  // namespace

AnyMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "matrix must be a JSON object");
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  try {
    if (j.contains("dim")) {
      rows = cols = count_at(j, "dim");
    } else {
      rows = count_at(j, "rows");
      cols = count_at(j, "cols");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("missing shape: ") + e.what());
  }
  const std::string field = j.value("field", std::string("real"));
  if (!j.contains("data") || !j.at("data").is_array()) {
    throw Error(ErrorCode::ParseError, "\"data\" must be an array");
  }
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw Error(ErrorCode::ShapeError, "data has " + std::to_string(data.size()) + " entries, expected " +
                                           std::to_string(rows * cols));
  }
  if (field == "real") {
    RealMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index k = 0; k < cols; ++k) a(i, k) = number_at(data[static_cast<std::size_t>(i * cols + k)], "entry");
    return a;
  }
  if (field == "complex") {
    ComplexMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index k = 0; k < cols; ++k) {
        const auto& e = data[static_cast<std::size_t>(i * cols + k)];
        if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "complex entries are [re, im] pairs");
        a(i, k) = Complex(number_at(e[0], "real part"), number_at(e[1], "imaginary part"));
      }
    }
    return a;
  }
  throw Error(ErrorCode::ParseError, "unknown field \"" + field + "\"");
}

template <Field F>
json matrix_to_json(const Matrix<F>& a) {
  json data = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if constexpr (is_complex_v<F>) {
        data.push_back(json::array({a(i, k).real(), a(i, k).imag()}));
      } else {
        data.push_back(a(i, k));
      }
    }
  }
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"field", std::string(field_name<F>())}, {"data", data}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

AnyMatrix parse_matrix_file(const std::filesystem::path& path) { return matrix_from_json(read_json_file(path)); }

template <Field F>
void write_matrix_file(const std::filesystem::path& path, const Matrix<F>& a) {
  write_json_file(path, matrix_to_json(a));
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    h ^= static_cast<unsigned char>(*it);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

template json matrix_to_json<double>(const Matrix<double>&);
template json matrix_to_json<Complex>(const Matrix<Complex>&);
template void write_matrix_file<double>(const std::filesystem::path&, const Matrix<double>&);
template void write_matrix_file<Complex>(const std::filesystem::path&, const Matrix<Complex>&);

}  // namespace canon
