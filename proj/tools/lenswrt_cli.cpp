// Copyright 2026 The lenswrt Authors
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

// lenswrt: command-line front end.
//
// Exit codes: 0 success, 2 invalid input, 3 computation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lenswrt/lenswrt.hpp"
#include "lenswrt/selftest.hpp"

namespace {

using namespace lenswrt;

enum class Format { json, csv, text };

struct Output {
  Json json;
  std::vector<std::string> header;  // CSV columns
  std::vector<std::vector<std::string>> rows;
  std::string text;
  int exit_code = 0;
};

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

template <class Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'", "FileNotFound");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what(), "ParseError");
  }
}

std::string poly_text(const KPoly& f) { return f.to_string(); }

Output cmd_gauss(int64_t p, int64_t a, int64_t b, int bits) {
  const GaussSumSpec spec(p, a, b);
  const KNum g = gauss_sum(spec);
  return with_precision(bits, [&](auto zero) {
    using Real = decltype(zero);
    const Complex<Real> v = g.template embed<Real>();
    Output o;
    o.json = {{"p", spec.p},           {"a", spec.a},
              {"b", spec.b},           {"exact", cyclotomic_to_json(g)},
              {"value", g.to_string()}, {"re", to_double(v.re)},
              {"im", to_double(v.im)}, {"abs2", to_double(norm(v))}};
    o.header = {"p", "a", "b", "value", "re", "im", "abs2"};
    o.rows = {{std::to_string(spec.p), std::to_string(spec.a), std::to_string(spec.b),
               g.to_string(), fmt_double(to_double(v.re)), fmt_double(to_double(v.im)),
               fmt_double(to_double(norm(v)))}};
    o.text = g.to_string() + "\n~ " + fmt_double(to_double(v.re)) + " + " +
             fmt_double(to_double(v.im)) + " i\n";
    return o;
  });
}

Output cmd_dedekind(int64_t p, int64_t q) {
  require(p >= 1, "p must be >= 1");
  const Rational s = dedekind_sum(q, p);
  Output o;
  o.json = {{"p", p}, {"q", q}, {"s", s.get_str()}};
  o.header = {"p", "q", "s"};
  o.rows = {{std::to_string(p), std::to_string(q), s.get_str()}};
  o.text = "s(" + std::to_string(q) + "," + std::to_string(p) + ") = " + s.get_str() + "\n";
  return o;
}

Output cmd_phi(int64_t p, int64_t q) {
  const SL2Word w = sl2_expand(p, q);
  const int64_t phi = rademacher_phi(p, q);
  const Rational closed = rademacher_phi_closed_form(p, q);
  const Mat2 U = gluing_matrix(p, q);
  Output o;
  o.json = {{"p", p},
            {"q", q},
            {"U", {U.a, U.b, U.c, U.d}},
            {"word", w.m},
            {"trace", w.trace()},
            {"signature", w.signature()},
            {"phi", phi},
            {"closed_form", closed.get_str()},
            {"identity_holds", phi_identity_holds(p, q)}};
  std::string word;
  for (int64_t m : w.m) word += (word.empty() ? "" : " ") + std::to_string(m);
  o.header = {"p", "q", "phi", "closed_form", "word"};
  o.rows = {{std::to_string(p), std::to_string(q), std::to_string(phi), closed.get_str(), word}};
  o.text = "Phi = " + std::to_string(phi) + " (closed form " + closed.get_str() + ")\nword: " +
           word + "\n";
  return o;
}

Output cmd_fpoly(int64_t p, int64_t q, int64_t c, int64_t k) {
  const LensSpace L = LensSpace::make(p, q);
  require(k >= 0 && k < p, "k must satisfy 0 <= k < p");
  const FPolynomial f = f_poly(L, c, k);
  Output o;
  o.json = fpoly_to_json(f);
  o.header = {"exponent", "coefficient"};
  for (const auto& [e, v] : f.body.terms()) o.rows.push_back({std::to_string(e), v.to_string()});
  o.text = std::string(f.sign > 0 ? "+" : "-") + "i/sqrt(2p) * (" + poly_text(f.body) + ")\n";
  return o;
}

Output cmd_wrt(int64_t p, int64_t q, std::optional<int64_t> c, const std::string& skein_file,
               int64_t r_min, int64_t r_max, int bits) {
  const LensSpace L = LensSpace::make(p, q);
  require(r_min >= 2 && r_max >= r_min, "need 2 <= r-min <= r-max");
  require(c.has_value() != !skein_file.empty(), "give exactly one of --c and --skein");
  SkeinVectorZ J;
  if (c) {
    require(*c >= -1 && *c <= L.half(), "c must lie in [-1, [p/2]]");
  } else {
    J = skein_z_from_json(read_json_file(skein_file));
    require(J.p == p, "skein order does not match p", "OrderMismatch");
  }
  return with_precision(bits, [&](auto zero) {
    using Real = decltype(zero);
    Output o;
    o.header = {"r", "re", "im", "oracle_re", "oracle_im", "abs_diff"};
    Json rows = Json::array();
    std::ostringstream text;
    for (int64_t r = r_min; r <= r_max; ++r) {
      Complex<Real> v, oracle;
      if (c) {
        v = eval_meridian<Real>(L, *c, r);
        oracle = jeffrey_oracle<Real>(L, *c, r);
      } else {
        v = eval_link<Real>(L, J, r);
        // Coefficients evaluated at xi_{4pr} against the oracle per colour.
        for (size_t cc = 0; cc < J.coeffs.size(); ++cc) {
          Complex<Real> coeff;
          for (const auto& [e, a] : J.coeffs[cc].terms())
            coeff += a.template embed<Real>() * unit_root<Real>(e, 4 * p * r);
          oracle += coeff * jeffrey_oracle<Real>(L, static_cast<int64_t>(cc), r);
        }
      }
      const double diff = to_double(abs(v - oracle));
      o.rows.push_back({std::to_string(r), fmt_double(to_double(v.re)), fmt_double(to_double(v.im)),
                        fmt_double(to_double(oracle.re)), fmt_double(to_double(oracle.im)),
                        fmt_double(diff)});
      rows.push_back({{"r", r},
                      {"re", to_double(v.re)},
                      {"im", to_double(v.im)},
                      {"oracle_re", to_double(oracle.re)},
                      {"oracle_im", to_double(oracle.im)},
                      {"abs_diff", diff}});
      text << "r=" << r << "  " << fmt_double(to_double(v.re)) << " " << fmt_double(to_double(v.im))
           << " i   |diff| " << fmt_double(diff) << "\n";
    }
    o.json = {{"p", p}, {"q", q}, {"precision_bits", bits}, {"values", rows}};
    if (c) o.json["c"] = *c;
    o.text = text.str();
    return o;
  });
}

Output cmd_rank(int64_t p, int64_t q) {
  const LensSpace L = LensSpace::make(p, q);
  const size_t rk = f_rank(L);
  Output o;
  o.json = {{"p", p},
            {"q", q},
            {"rank", rk},
            {"columns", L.half() + 1},
            {"full", rk == static_cast<size_t>(L.half() + 1)},
            {"squares_mod_p", count_squares_mod(p)},
            {"class", to_string(classify_order(p))}};
  o.header = {"p", "q", "rank", "columns"};
  o.rows = {{std::to_string(p), std::to_string(q), std::to_string(rk),
             std::to_string(L.half() + 1)}};
  o.text = std::to_string(rk) + "\n";
  return o;
}

Output cmd_kernel(int64_t p, int64_t q) {
  const LensSpace L = LensSpace::make(p, q);
  const auto K = kernel(L);
  Output o;
  Json basis = Json::array();
  std::ostringstream text;
  o.header = {"vector", "c", "polynomial"};
  for (size_t i = 0; i < K.size(); ++i) {
    const SkeinVectorZ v{p, K[i]};
    Json entry = skein_to_json(v);
    entry["in_lambda_image"] = lambda_membership(K[i], p);
    basis.push_back(entry);
    for (size_t c = 0; c < K[i].size(); ++c) {
      o.rows.push_back({std::to_string(i), std::to_string(c), poly_text(K[i][c])});
      if (!K[i][c].is_zero()) text << "(" << poly_text(K[i][c]) << ") mu_" << c << "\n";
    }
    text << "\n";
  }
  o.json = {{"p", p}, {"q", q}, {"rank", L.half() + 1 - static_cast<int64_t>(K.size())},
            {"dimension", K.size()}, {"basis", basis}};
  o.text = K.empty() ? "kernel is zero\n" : text.str();
  return o;
}

Output cmd_classify(int64_t p) {
  const OrderClass c = classify_order(p);
  Output o;
  o.json = {{"p", p}, {"class", to_string(c)}, {"squares_mod_p", count_squares_mod(p)}};
  o.header = {"p", "class"};
  o.rows = {{std::to_string(p), to_string(c)}};
  o.text = to_string(c) + "\n";
  return o;
}

Output cmd_recover(int64_t p, int64_t q, const std::string& file) {
  const LensSpace L = LensSpace::make(p, q);
  const Json j = read_json_file(file);
  if (j.contains("p") && j.at("p").get<int64_t>() != p)
    throw ValidationError("samples file is for a different p", "OrderMismatch");
  const RecoveredSkein s = recover_skein(L, fpolys_from_json(j));
  Output o;
  Json num = Json::array();
  for (const auto& c : s.numerators) num.push_back(poly_to_json(c));
  o.json = {{"p", p}, {"q", q}, {"polynomial", s.polynomial()}, {"z_coeffs", num},
            {"denominator", poly_to_json(s.denominator)}};
  if (s.a_form) o.json["skein"] = skein_to_json(*s.a_form);
  o.header = {"c", "coefficient"};
  std::ostringstream text;
  for (size_t c = 0; c < s.numerators.size(); ++c) {
    const std::string val = s.a_form ? (*s.a_form)[c].to_string() : poly_text(s.numerators[c]);
    o.rows.push_back({std::to_string(c), val});
    text << "C_" << c << " = " << val << "\n";
  }
  if (!s.polynomial()) text << "common denominator: " << poly_text(s.denominator) << "\n";
  o.text = text.str();
  return o;
}

Output cmd_selftest() {
  const auto results = run_selftest([](const CriterionResult& r) {
    std::cerr << format_result(r) << std::endl;
  });
  Output o;
  Json list = Json::array();
  std::ostringstream text;
  bool all = true;
  o.header = {"id", "pass", "title", "detail", "seconds"};
  for (const auto& r : results) {
    all = all && r.pass;
    list.push_back({{"id", r.id}, {"pass", r.pass}, {"title", r.title}, {"detail", r.detail}});
    o.rows.push_back({std::to_string(r.id), r.pass ? "pass" : "fail", r.title, r.detail,
                      fmt_double(r.seconds)});
    text << format_result(r) << "\n";
  }
  o.json = {{"passed", all}, {"criteria", list}};
  o.text = text.str();
  o.exit_code = all ? 0 : 1;
  return o;
}

void emit(const Output& o, Format f, std::ostream& os) {
  switch (f) {
    case Format::json:
      os << o.json.dump(2) << "\n";
      break;
    case Format::csv: {
      for (size_t i = 0; i < o.header.size(); ++i) os << (i ? "," : "") << o.header[i];
      os << "\n";
      for (const auto& row : o.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
        os << "\n";
      }
      break;
    }
    case Format::text:
      os << o.text;
      break;
  }
}

int report_error(const std::string& name, const std::string& what, int code, Format f) {
  if (f == Format::json) {
    std::cout << Json{{"error", name}, {"message", what}, {"exit_code", code}}.dump(2) << "\n";
  } else if (f == Format::csv) {
    std::cout << "error,message\n" << csv_escape(name) << "," << csv_escape(what) << "\n";
  }
  std::cerr << "error: " << name << ": " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact f-polynomials and WRT invariants of lens spaces"};
  app.require_subcommand(1);

  std::string format_name = "text";
  int bits = 64;
  std::string output;
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--precision", bits, "Mantissa bits for numeric work (53..512)");
  app.add_option("--output", output, "Write the result to this file");

  int64_t p = 0, q = 0, a = 0, b = 0, c = 0, k = 0, r_min = 2, r_max = 20;
  std::optional<int64_t> colour;
  std::string skein_file, samples_file;

  auto* gauss = app.add_subcommand("gauss", "Generalized Gauss sum G_p(a,b)");
  gauss->add_option("p", p)->required();
  gauss->add_option("a", a)->required();
  gauss->add_option("b", b)->required();

  auto* dedekind = app.add_subcommand("dedekind", "Dedekind sum s(q,p)");
  dedekind->add_option("p", p)->required();
  dedekind->add_option("q", q)->required();

  auto* phi = app.add_subcommand("phi", "Rademacher Phi of the gluing matrix");
  phi->add_option("p", p)->required();
  phi->add_option("q", q)->required();

  auto* fpoly = app.add_subcommand("fpoly", "f_{p,q,c,k}");
  for (auto* opt : {"p", "q", "c", "k"}) {
    int64_t* target = std::string(opt) == "p" ? &p : std::string(opt) == "q" ? &q
                                                 : std::string(opt) == "c"   ? &c
                                                                             : &k;
    fpoly->add_option(opt, *target)->required();
  }

  auto* wrt = app.add_subcommand("wrt", "w_r over a range of levels, with the oracle");
  wrt->add_option("p", p)->required();
  wrt->add_option("q", q)->required();
  wrt->add_option("--c", colour, "Colour of the meridian");
  wrt->add_option("--skein", skein_file, "Skein element JSON file");
  wrt->add_option("--r-min", r_min, "First level");
  wrt->add_option("--r-max", r_max, "Last level");

  auto* rank_cmd = app.add_subcommand("rank", "Rank of the f-matrix");
  rank_cmd->add_option("p", p)->required();
  rank_cmd->add_option("q", q)->required();

  auto* kernel_cmd = app.add_subcommand("kernel", "Kernel of the f-matrix");
  kernel_cmd->add_option("p", p)->required();
  kernel_cmd->add_option("q", q)->required();

  auto* classify = app.add_subcommand("classify", "Whether order p determines skein classes");
  classify->add_option("p", p)->required();

  auto* recover = app.add_subcommand("recover", "Skein coefficients from f_{J,k}, k = 0..p-1");
  recover->add_option("p", p)->required();
  recover->add_option("q", q)->required();
  recover->add_option("file", samples_file, "JSON file with 'fpolys'")->required();

  auto* self = app.add_subcommand("selftest", "Run the acceptance checks");

  Format fmt = Format::text;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--format" && std::string(argv[i + 1]) == "json")
        fmt = Format::json;
    return report_error("InvalidArgument", e.what(), 2, fmt);
  }
  fmt = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::text;

  try {
    Output o;
    if (*gauss) o = cmd_gauss(p, a, b, bits);
    else if (*dedekind) o = cmd_dedekind(p, q);
    else if (*phi) o = cmd_phi(p, q);
    else if (*fpoly) o = cmd_fpoly(p, q, c, k);
    else if (*wrt) o = cmd_wrt(p, q, colour, skein_file, r_min, r_max, bits);
    else if (*rank_cmd) o = cmd_rank(p, q);
    else if (*kernel_cmd) o = cmd_kernel(p, q);
    else if (*classify) o = cmd_classify(p);
    else if (*recover) o = cmd_recover(p, q, samples_file);
    else if (*self) o = cmd_selftest();

    if (output.empty()) {
      emit(o, fmt, std::cout);
    } else {
      std::ofstream out(output);
      if (!out) return report_error("FileNotWritable", "cannot write '" + output + "'", 2, fmt);
      emit(o, fmt, out);
    }
    return o.exit_code;
  } catch (const ValidationError& e) {
    return report_error(e.name(), e.what(), 2, fmt);
  } catch (const ComputationError& e) {
    return report_error(e.name(), e.what(), 3, fmt);
  } catch (const Error& e) {
    return report_error(e.name(), e.what(), 3, fmt);
  } catch (const nlohmann::json::exception& e) {
    return report_error("ParseError", e.what(), 2, fmt);
  }
}
