// Copyright 2026 The symclone authors
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

#include "symclone/serialize.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace symclone {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Matrix matrix_from_json(const json& j, const std::string& path,
                        const char* re_key, const char* im_key,
                        Eigen::Index side) {
  const auto& re = j.at(re_key);
  const auto& im = j.at(im_key);
  if (!re.is_array() || !im.is_array() ||
      static_cast<Eigen::Index>(re.size()) != side * side ||
      static_cast<Eigen::Index>(im.size()) != side * side) {
    throw ParseError(path + ": " + re_key + "/" + im_key +
                     " must be row-major arrays of length " +
                     std::to_string(side * side));
  }
  Matrix m(side, side);
  for (Eigen::Index r = 0; r < side; ++r) {
    for (Eigen::Index c = 0; c < side; ++c) {
      m(r, c) = Complex(re[r * side + c].get<double>(),
                        im[r * side + c].get<double>());
    }
  }
  return m;
}

json matrix_to_json_part(const Matrix& m, bool imag) {
  json arr = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      arr.push_back(imag ? m(r, c).imag() : m(r, c).real());
    }
  }
  return arr;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonValue JsonValue::boolean(bool b) {
  JsonValue v;
  v.kind_ = Kind::Bool;
  v.b_ = b;
  return v;
}

JsonValue JsonValue::integer(std::int64_t i) {
  JsonValue v;
  v.kind_ = Kind::Int;
  v.i_ = i;
  return v;
}

JsonValue JsonValue::number(double d) {
  JsonValue v;
  v.kind_ = Kind::Double;
  v.d_ = d;
  return v;
}

JsonValue JsonValue::string(std::string s) {
  JsonValue v;
  v.kind_ = Kind::String;
  v.s_ = std::move(s);
  return v;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::Object;
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::Array;
  return v;
}

JsonValue& JsonValue::add(const std::string& key, JsonValue v) {
  fields_.emplace_back(key, std::move(v));
  return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
  items_.push_back(std::move(v));
  return *this;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

void JsonValue::dump_to(std::string& out, int indent, int depth) const {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1),
                           ' ');
  switch (kind_) {
    case Kind::Null: out += "null"; break;
    case Kind::Bool: out += b_ ? "true" : "false"; break;
    case Kind::Int: out += std::to_string(i_); break;
    case Kind::Double: out += format_double(d_); break;
    case Kind::String: escape_into(out, s_); break;
    case Kind::Array: {
      if (items_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        out += pad_in;
        items_[i].dump_to(out, indent, depth + 1);
        if (i + 1 < items_.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      break;
    }
    case Kind::Object: {
      if (fields_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        out += pad_in;
        escape_into(out, fields_[i].first);
        out += ": ";
        fields_[i].second.dump_to(out, indent, depth + 1);
        if (i + 1 < fields_.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      break;
    }
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  dump_to(out, indent, 0);
  out += '\n';
  return out;
}

JsonValue certified(double value, double tolerance) {
  JsonValue v = JsonValue::object();
  v.add("value", JsonValue::number(value));
  v.add("tolerance", JsonValue::number(tolerance));
  return v;
}

SymOperator read_sym_operator(const std::string& path) {
  const json j = parse_file(path);
  try {
    const int d = j.at("d").get<int>();
    const int M = j.at("M").get<int>();
    const Eigen::Index side = sym_dim(d, M);
    return SymOperator(d, M, matrix_from_json(j, path, "re", "im", side));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

bool sym_operator_file_is_subspace(const std::string& path) {
  const json j = parse_file(path);
  try {
    const int d = j.at("d").get<int>();
    const int M = j.at("M").get<int>();
    const Eigen::Index entries = static_cast<Eigen::Index>(j.at("re").size());
    const Eigen::Index side_sym = sym_dim(d, M);
    if (entries == side_sym * side_sym) return true;
    Eigen::Index full = 1;
    for (int t = 0; t < M; ++t) full *= d;
    if (entries == full * full) return false;
    throw ParseError(path + ": matrix size matches neither sym_dim(d,M)^2 "
                            "nor (d^M)^2");
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Matrix read_full_operator(const std::string& path, int& d, int& M) {
  const json j = parse_file(path);
  try {
    d = j.at("d").get<int>();
    M = j.at("M").get<int>();
    Eigen::Index full = 1;
    for (int t = 0; t < M; ++t) full *= d;
    return matrix_from_json(j, path, "re", "im", full);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SymChannel read_sym_channel(const std::string& path) {
  const json j = parse_file(path);
  try {
    const int d = j.at("d").get<int>();
    const int cin = j.at("copies_in").get<int>();
    const int cout = j.at("copies_out").get<int>();
    const Eigen::Index side = sym_dim(d, cin) * sym_dim(d, cout);
    return SymChannel(d, cin, cout,
                      matrix_from_json(j, path, "choi_re", "choi_im", side));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_sym_operator(const SymOperator& op, const std::string& path) {
  json j;
  j["d"] = op.d;
  j["M"] = op.M;
  j["re"] = matrix_to_json_part(op.matrix, false);
  j["im"] = matrix_to_json_part(op.matrix, true);
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

void write_sym_channel(const SymChannel& ch, const std::string& path) {
  json j;
  j["d"] = ch.d;
  j["copies_in"] = ch.copies_in;
  j["copies_out"] = ch.copies_out;
  j["choi_re"] = matrix_to_json_part(ch.choi, false);
  j["choi_im"] = matrix_to_json_part(ch.choi, true);
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

JsonValue to_json(const DeFinettiCertificate& cert, double tolerance) {
  JsonValue v = JsonValue::object();
  v.add("k", JsonValue::integer(cert.k));
  v.add("distance", certified(cert.distance, tolerance));
  v.add("bound", JsonValue::number(cert.bound));
  v.add("margin", certified(cert.margin, tolerance));
  v.add("dimension_used", JsonValue::integer(cert.dimension_used));
  v.add("norm", JsonValue::string(cert.norm));
  return v;
}

JsonValue to_json(const CapacityReport& report, double tol_sdp) {
  JsonValue v = JsonValue::object();
  v.add("d", JsonValue::integer(report.d));
  v.add("M", JsonValue::integer(report.M));
  v.add("k", JsonValue::integer(report.k));
  v.add("d_in", JsonValue::integer(report.d_in));
  v.add("continuity_defined", JsonValue::boolean(report.continuity_defined));
  if (report.continuity_bound) {
    v.add("continuity_bound", JsonValue::number(*report.continuity_bound));
  }
  v.add("transpose_bound_log", JsonValue::number(report.transpose_bound_log));
  v.add("transpose_bound_linear",
        JsonValue::number(report.transpose_bound_linear));
  v.add("min_bound", JsonValue::number(report.min_bound));
  if (report.computed_transpose_diamond) {
    v.add("computed_transpose_diamond",
          certified(*report.computed_transpose_diamond, tol_sdp));
  }
  return v;
}

JsonValue to_json(const BoundComparisonRow& row, double tol_sdp) {
  JsonValue v = JsonValue::object();
  v.add("d", JsonValue::integer(row.d));
  v.add("M", JsonValue::integer(row.M));
  v.add("k", JsonValue::integer(row.k));
  v.add("bound_estimation_1",
        JsonValue::number(rational_to_double(row.bounds.bound_estimation_1)));
  if (row.bounds.estimation2_defined) {
    v.add("bound_estimation_2_exact",
          JsonValue::number(*row.bounds.bound_estimation_2_exact));
    v.add("bound_estimation_2_linear",
          JsonValue::number(
              rational_to_double(*row.bounds.bound_estimation_2_linear)));
  }
  v.add("bound_cloning",
        JsonValue::number(rational_to_double(row.bounds.bound_cloning)));
  v.add("min_estimation_bound",
        JsonValue::number(row.bounds.min_estimation_bound));
  v.add("bound1_preferred_regime",
        JsonValue::boolean(row.bounds.bound1_preferred_regime));
  if (row.computed) {
    v.add("sdp_upper", certified(row.computed->upper, tol_sdp));
    v.add("seesaw_lower", JsonValue::number(row.computed->lower));
    v.add("certified_gap",
          JsonValue::number(row.computed->sdp.certified_gap));
  }
  return v;
}

JsonValue to_json(const GapRow& row) {
  JsonValue v = JsonValue::object();
  v.add("M", JsonValue::integer(row.M));
  v.add("f_clon", JsonValue::number(row.f_clon));
  v.add("f_est", JsonValue::number(row.f_est));
  v.add("gap", JsonValue::number(row.gap));
  v.add("bound", JsonValue::number(row.bound));
  return v;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

std::string svg_line_plot(const std::vector<SvgSeries>& series,
                          const std::string& x_label,
                          const std::string& y_label) {
  const int width = 640, height = 420;
  const int ml = 60, mr = 20, mt = 20, mb = 50;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  ymin = std::min(ymin, 0.0);
  const auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  const auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
      << width - mr << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label
      << "</text>\n";
  svg << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "16 "
      << (mt + height - mb) / 2 << ")\">" << y_label << "</text>\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", ymax);
  svg << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
      << "\" font-size=\"11\" text-anchor=\"end\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.4g", ymin);
  svg << "<text x=\"" << ml - 6 << "\" y=\"" << height - mb
      << "\" font-size=\"11\" text-anchor=\"end\">" << buf << "</text>\n";
  int ci = 0;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << colors[ci % 6]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
      svg << buf;
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << width - mr - 150 << "\" y=\"" << mt + 16 * (ci + 1)
        << "\" font-size=\"12\" fill=\"" << colors[ci % 6] << "\">" << s.label
        << "</text>\n";
    ++ci;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace symclone
