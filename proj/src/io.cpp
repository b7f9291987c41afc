#include "grpiso/io.hpp"

#include <fstream>
#include <sstream>

namespace grpiso {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(strip(cur));
  return out;
}

u64 parse_u64(const std::string& s) {
  std::size_t pos = 0;
  u64 v;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected integer, got '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("expected integer, got '" + s + "'");
  return v;
}

std::vector<u64> parse_u64_list(const std::string& s) {
  std::vector<u64> out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_u64(tok));
  return out;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return in;
}

// next non-blank, non-comment line
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (!line.empty()) return true;
  }
  return false;
}

}  // namespace

ClassSGroupSpec read_spec(std::istream& in) {
  ClassSGroupSpec spec;
  bool saw_abelian = false, saw_m = false, saw_action = false;
  std::string line;
  while (next_line(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec: expected 'key = value': " + line);
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key == "abelian") {
      spec.abelian_orders = parse_u64_list(value);
      saw_abelian = true;
    } else if (key == "m") {
      spec.m = parse_u64(value);
      saw_m = true;
    } else if (key == "action") {
      spec.action.clear();
      for (const auto& row : split(value, ';')) {
        spec.action.push_back({});
        for (u64 v : parse_u64_list(row))
          spec.action.back().push_back(static_cast<i64>(v));
      }
      saw_action = true;
    } else if (key == "scramble_seed") {
      spec.scramble_seed = parse_u64(value);
    } else {
      throw std::invalid_argument("spec: unknown key " + key);
    }
  }
  if (!saw_abelian || !saw_m || !saw_action)
    throw std::invalid_argument("spec: missing abelian, m, or action");
  spec.validate();
  return spec;
}

ClassSGroupSpec read_spec_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_spec(in);
}

void write_spec(std::ostream& out, const ClassSGroupSpec& spec) {
  out << "abelian = ";
  for (std::size_t i = 0; i < spec.abelian_orders.size(); ++i)
    out << (i ? "," : "") << spec.abelian_orders[i];
  out << "\nm = " << spec.m << "\naction = ";
  for (std::size_t i = 0; i < spec.action.size(); ++i) {
    if (i) out << ";";
    for (std::size_t j = 0; j < spec.action[i].size(); ++j)
      out << (j ? "," : "") << spec.action[i][j];
  }
  out << "\nscramble_seed = " << spec.scramble_seed << "\n";
}

void write_spec_file(const std::string& path, const ClassSGroupSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  write_spec(out, spec);
}

std::vector<std::vector<std::size_t>> read_table(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw std::invalid_argument("table: empty file");
  u64 n = parse_u64(line);
  std::vector<std::vector<std::size_t>> table;
  for (u64 i = 0; i < n; ++i) {
    if (!next_line(in, line)) throw std::invalid_argument("table: truncated");
    std::istringstream row(line);
    std::vector<std::size_t> r;
    u64 v;
    while (row >> v) r.push_back(static_cast<std::size_t>(v));
    if (r.size() != n) throw std::invalid_argument("table: bad row length");
    table.push_back(std::move(r));
  }
  return table;
}

std::vector<std::vector<std::size_t>> read_table_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_table(in);
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw std::invalid_argument("matrix: missing header");
  std::istringstream head(line);
  u64 p = 0, r = 0;
  if (!(head >> p >> r)) throw std::invalid_argument("matrix: bad header");
  if (!is_prime(p)) throw std::invalid_argument("matrix: p must be prime");
  const FiniteField& f = splitting_field(p, 1);
  std::vector<std::vector<u64>> rows;
  for (u64 i = 0; i < r; ++i) {
    if (!next_line(in, line)) throw std::invalid_argument("matrix: truncated");
    std::istringstream row(line);
    std::vector<u64> vals;
    u64 v;
    while (row >> v) vals.push_back(v % p);
    if (vals.size() != r) throw std::invalid_argument("matrix: bad row length");
    rows.push_back(std::move(vals));
  }
  return Matrix::from_residues(f, rows);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.field().characteristic() << " " << m.dim() << "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j)
      out << (j ? " " : "") << m.at(i, j).coeffs()[0];
    out << "\n";
  }
}

std::vector<Matrix> read_matrix_file(const std::string& path) {
  auto in = open_or_throw(path);
  std::vector<Matrix> out;
  while (true) {
    // peek for another header
    std::streampos pos = in.tellg();
    std::string line;
    if (!next_line(in, line)) break;
    in.seekg(pos);
    out.push_back(read_matrix(in));
  }
  return out;
}

std::string elem_to_text(const FFElem& e) {
  std::string out;
  for (std::size_t i = 0; i < e.coeffs().size(); ++i)
    out += (i ? "," : "") + std::to_string(e.coeffs()[i]);
  return out;
}

std::pair<std::vector<FieldMultiset>, std::vector<FieldMultiset>> read_setdlog(
    std::istream& in) {
  std::vector<FieldMultiset> s_list, t_list;
  std::string line;
  while (next_line(in, line)) {
    std::istringstream head(line);
    u64 p = 0, d = 0;
    if (!(head >> p >> d)) throw std::invalid_argument("setdlog: bad block header");
    if (!is_prime(p) || d == 0)
      throw std::invalid_argument("setdlog: bad block header");
    const FiniteField& f = splitting_field(p, static_cast<unsigned>(d));
    auto read_side = [&]() {
      if (!next_line(in, line)) throw std::invalid_argument("setdlog: truncated block");
      std::vector<FFElem> elems;
      std::istringstream toks(line);
      std::string tok;
      while (toks >> tok) {
        auto coeffs = parse_u64_list(tok);
        if (coeffs.size() > d)
          throw std::invalid_argument("setdlog: element degree too large");
        elems.push_back(f.from_coeffs(coeffs));
      }
      return FieldMultiset(f, std::move(elems));
    };
    s_list.push_back(read_side());
    t_list.push_back(read_side());
  }
  return {s_list, t_list};
}

std::pair<std::vector<FieldMultiset>, std::vector<FieldMultiset>>
read_setdlog_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_setdlog(in);
}

}  // namespace grpiso
