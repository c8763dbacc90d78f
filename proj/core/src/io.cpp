#include "berezin/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "berezin/error.hpp"

namespace berezin {

using nlohmann::json;

Matrix parse_operator(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadMatrix, std::string("operator file is not JSON: ") + e.what());
  }
  try {
    const auto rows = doc.at("rows").get<std::size_t>();
    const auto cols = doc.at("cols").get<std::size_t>();
    const auto re = doc.at("re").get<std::vector<std::vector<double>>>();
    std::vector<std::vector<double>> im;
    if (doc.contains("im")) im = doc.at("im").get<std::vector<std::vector<double>>>();
    if (re.size() != rows || (!im.empty() && im.size() != rows)) {
      throw Error(ErrorKind::BadMatrix, "row count does not match \"rows\"");
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (re[i].size() != cols || (!im.empty() && im[i].size() != cols)) {
        throw Error(ErrorKind::BadMatrix, "row " + std::to_string(i) + " does not match \"cols\"");
      }
      for (std::size_t j = 0; j < cols; ++j) entries.emplace_back(re[i][j], im.empty() ? 0.0 : im[i][j]);
    }
    return Matrix(rows, cols, std::move(entries));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadMatrix, std::string("operator file: ") + e.what());
  }
}

Matrix load_operator(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_operator(buf.str());
}

std::string operator_to_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ii = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  json doc = {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
  return doc.dump() + "\n";
}

std::string symbol_csv(const BerezinSetSample& samples) {
  std::string out = "lambda_re,lambda_im,sym_re,sym_im,abs\n";
  char buf[160];
  for (const auto& s : samples) {
    double lre = 0.0;
    double lim = 0.0;
    if (const auto* z = std::get_if<Complex>(&s.point)) {
      lre = z->real();
      lim = z->imag();
    } else {
      lre = static_cast<double>(std::get<std::size_t>(s.point));
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", lre, lim, s.value.real(), s.value.imag(),
                  std::abs(s.value));
    out += buf;
  }
  return out;
}

}  // namespace berezin
