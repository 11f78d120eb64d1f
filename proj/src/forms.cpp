#include "kwall/forms.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kwall {

Grading Grading::bidegree(int a, int b) {
  if (a < 0 || b < 0) fail(ErrorCode::Grading, "bidegree must be non-negative");
  Grading g;
  g.kind = GradingKind::Bidegree;
  g.deg_a = a;
  g.deg_b = b;
  return g;
}

Grading Grading::homogeneous(int d) {
  if (d < 0) fail(ErrorCode::Grading, "degree must be non-negative");
  Grading g;
  g.kind = GradingKind::Homogeneous;
  g.deg_a = d;
  return g;
}

std::string Grading::describe() const {
  std::ostringstream os;
  if (kind == GradingKind::Bidegree)
    os << "Bidegree(" << deg_a << "," << deg_b << ")";
  else
    os << "Homogeneous(" << deg_a << ")";
  return os.str();
}

const char* Grading::var_name(int i) const {
  static const char* bivars[4] = {"x0", "x1", "y0", "y1"};
  static const char* hvars[4] = {"x0", "x1", "x2", "x3"};
  return kind == GradingKind::Bidegree ? bivars[i] : hvars[i];
}

int Grading::parse_var(const std::string& name) const {
  for (int i = 0; i < 4; ++i)
    if (name == var_name(i)) return i;
  return -1;
}

namespace {

bool expo_matches(const Grading& g, const Expo& e) {
  for (int v : e)
    if (v < 0) return false;
  if (g.kind == GradingKind::Bidegree) return e[0] + e[1] == g.deg_a && e[2] + e[3] == g.deg_b;
  return total_degree(e) == g.deg_a;
}

void insert_term(TermMap& m, const Expo& e, const Rat& c) {
  if (c == 0) return;
  auto it = m.find(e);
  if (it == m.end()) {
    m.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

}  // namespace

MultiForm zero_form(const Grading& g) { return MultiForm{g, {}}; }

MultiForm monomial_form(const Grading& g, const Expo& e, const Rat& coeff) {
  MultiForm f{g, {}};
  if (!expo_matches(g, e)) fail(ErrorCode::Grading, "monomial violates " + g.describe());
  insert_term(f.terms, e, coeff);
  return f;
}

void check_homogeneous(const MultiForm& f) {
  for (const auto& [e, c] : f.terms) {
    if (c == 0) fail(ErrorCode::Internal, "stored zero coefficient");
    if (!expo_matches(f.grading, e))
      fail(ErrorCode::Grading, "term violates " + f.grading.describe());
  }
}

// ---------------------------------------------------------------------------
// parsing / printing

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& str) : s(str) {}

  void skip_ws() {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*')) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
};

long parse_exponent(Lexer& lx) {
  size_t start = lx.i;
  while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) ++lx.i;
  if (lx.i == start) fail(ErrorCode::Parse, "missing exponent after '^'");
  return std::stol(lx.s.substr(start, lx.i - start));
}

}  // namespace

MultiForm parse_form(const std::string& text, const Grading& g) {
  MultiForm f{g, {}};
  Lexer lx(text);
  bool first = true;
  while (!lx.done()) {
    int sign = 1;
    char c = lx.peek();
    if (c == '+' || c == '-') {
      sign = (c == '-') ? -1 : 1;
      ++lx.i;
    } else if (!first) {
      fail(ErrorCode::Parse, "expected '+' or '-' between terms");
    }
    first = false;
    lx.skip_ws();
    Rat coeff(sign);
    Expo e{0, 0, 0, 0};
    bool saw_factor = false;
    bool saw_coeff = false;
    while (true) {
      lx.skip_ws();
      if (lx.i >= lx.s.size()) break;
      char ch = lx.s[lx.i];
      if (ch == '+' || ch == '-') break;
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        if (saw_coeff) fail(ErrorCode::Parse, "two coefficients in one term");
        size_t start = lx.i;
        while (lx.i < lx.s.size() &&
               (std::isdigit(static_cast<unsigned char>(lx.s[lx.i])) || lx.s[lx.i] == '/'))
          ++lx.i;
        std::string lit = lx.s.substr(start, lx.i - start);
        if (lit.find('.') != std::string::npos) fail(ErrorCode::Parse, "decimal literals are not accepted");
        coeff *= rat_from_string(lit);
        saw_coeff = true;
        saw_factor = true;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(ch))) {
        size_t start = lx.i;
        ++lx.i;
        while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) ++lx.i;
        std::string name = lx.s.substr(start, lx.i - start);
        int v = g.parse_var(name);
        if (v < 0) fail(ErrorCode::Parse, "unknown variable '" + name + "' for " + g.describe());
        long exp = 1;
        if (lx.i < lx.s.size() && lx.s[lx.i] == '^') {
          ++lx.i;
          exp = parse_exponent(lx);
        }
        e[v] += static_cast<int>(exp);
        saw_factor = true;
        continue;
      }
      fail(ErrorCode::Parse, std::string("unexpected character '") + ch + "'");
    }
    if (!saw_factor) fail(ErrorCode::Parse, "empty term");
    if (!expo_matches(g, e)) {
      std::ostringstream os;
      os << "term of degree ";
      if (g.kind == GradingKind::Bidegree)
        os << "(" << e[0] + e[1] << "," << e[2] + e[3] << ")";
      else
        os << total_degree(e);
      os << " violates " << g.describe();
      fail(ErrorCode::Grading, os.str());
    }
    insert_term(f.terms, e, coeff);
  }
  return f;
}

std::string form_to_string(const MultiForm& f) {
  if (f.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending graded-lex
  for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
    const Rat& c = it->second;
    Rat mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    bool any_var = total_degree(it->first) > 0;
    bool wrote = false;
    if (mag != 1 || !any_var) {
      os << rat_to_string(mag);
      wrote = true;
    }
    for (int v = 0; v < 4; ++v) {
      int e = it->first[v];
      if (e == 0) continue;
      if (wrote) os << " ";
      os << f.grading.var_name(v);
      if (e > 1) os << "^" << e;
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// arithmetic

MultiForm form_add(const MultiForm& a, const MultiForm& b) {
  if (!(a.grading == b.grading))
    fail(ErrorCode::Grading, "cannot add " + a.grading.describe() + " and " + b.grading.describe());
  MultiForm r = a;
  for (const auto& [e, c] : b.terms) insert_term(r.terms, e, c);
  return r;
}

MultiForm form_neg(const MultiForm& a) {
  MultiForm r = a;
  for (auto& [e, c] : r.terms) c = -c;
  return r;
}

MultiForm form_sub(const MultiForm& a, const MultiForm& b) { return form_add(a, form_neg(b)); }

MultiForm form_scale(const MultiForm& a, const Rat& c) {
  MultiForm r{a.grading, {}};
  if (c == 0) return r;
  for (const auto& [e, v] : a.terms) r.terms.emplace(e, v * c);
  return r;
}

MultiForm form_mul(const MultiForm& a, const MultiForm& b) {
  if (a.grading.kind != b.grading.kind)
    fail(ErrorCode::Grading, "cannot multiply forms of different grading kinds");
  Grading g = a.grading.kind == GradingKind::Bidegree
                  ? Grading::bidegree(a.grading.deg_a + b.grading.deg_a, a.grading.deg_b + b.grading.deg_b)
                  : Grading::homogeneous(a.grading.deg_a + b.grading.deg_a);
  MultiForm r{g, {}};
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Expo e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
      insert_term(r.terms, e, ca * cb);
    }
  check_homogeneous(r);
  return r;
}

MultiForm form_pow(const MultiForm& a, int k) {
  if (k < 0) fail(ErrorCode::Range, "negative power of a form");
  Grading g = a.grading.kind == GradingKind::Bidegree
                  ? Grading::bidegree(a.grading.deg_a * k, a.grading.deg_b * k)
                  : Grading::homogeneous(a.grading.deg_a * k);
  if (k == 0) return monomial_form(g, Expo{0, 0, 0, 0}, Rat(1));
  MultiForm r = a;
  for (int i = 1; i < k; ++i) r = form_mul(r, a);
  return r;
}

bool form_eq(const MultiForm& a, const MultiForm& b) {
  return a.grading == b.grading && a.terms == b.terms;
}

// ---------------------------------------------------------------------------
// matrices and coordinate changes

Mat2 mat2_identity() {
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[i][j] = Rat(i == j ? 1 : 0);
  return m;
}

Mat4 mat4_identity() {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = Rat(i == j ? 1 : 0);
  return m;
}

Mat4 mat4_from_blocks(const Mat2& xb, const Mat2& yb) {
  Mat4 m = mat4_identity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m[i][j] = xb[i][j];
      m[2 + i][2 + j] = yb[i][j];
      m[i][2 + j] = Rat(0);
      m[2 + i][j] = Rat(0);
    }
  return m;
}

Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Rat s(0);
      for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      r[i][j] = s;
    }
  return r;
}

Rat mat4_det(const Mat4& a) {
  Mat4 m = a;
  Rat det(1);
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < 4; ++r) {
      if (m[r][col] == 0) continue;
      Rat factor = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

Mat4 mat4_inverse(const Mat4& a) {
  Mat4 m = a, inv = mat4_identity();
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) fail(ErrorCode::SingularMatrix, "matrix is not invertible");
    if (piv != col) {
      std::swap(m[piv], m[col]);
      std::swap(inv[piv], inv[col]);
    }
    Rat d = m[col][col];
    for (int c = 0; c < 4; ++c) {
      m[col][c] /= d;
      inv[col][c] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat factor = m[r][col];
      for (int c = 0; c < 4; ++c) {
        m[r][c] -= factor * m[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

namespace {

bool is_block_diagonal(const Mat4& m) {
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j)
      if (m[i][j] != 0 || m[j][i] != 0) return false;
  return true;
}

// Linear form sum_j m[v][j] * var_j as a degree-1 "polynomial" in dense term form.
using LinExpr = std::array<Rat, 4>;

MultiForm substitute(const MultiForm& f, const std::array<LinExpr, 4>& subs) {
  MultiForm r{f.grading, {}};
  for (const auto& [e, c] : f.terms) {
    // product over variables of (linear form)^exponent, expanded directly
    TermMap acc;
    acc.emplace(Expo{0, 0, 0, 0}, Rat(1));
    for (int v = 0; v < 4; ++v) {
      for (int k = 0; k < e[v]; ++k) {
        TermMap next;
        for (const auto& [ea, ca] : acc)
          for (int j = 0; j < 4; ++j) {
            if (subs[v][j] == 0) continue;
            Expo en = ea;
            en[j] += 1;
            insert_term(next, en, ca * subs[v][j]);
          }
        acc = std::move(next);
      }
    }
    for (const auto& [ea, ca] : acc) insert_term(r.terms, ea, ca * c);
  }
  check_homogeneous(r);
  return r;
}

}  // namespace

MultiForm change_coordinates(const MultiForm& f, const Mat4& m) {
  if (mat4_det(m) == 0) fail(ErrorCode::SingularMatrix, "coordinate change must be invertible");
  if (f.grading.kind == GradingKind::Bidegree && !is_block_diagonal(m))
    fail(ErrorCode::Grading, "Bidegree coordinate changes must be block diagonal 2x2 + 2x2");
  std::array<LinExpr, 4> subs;
  for (int v = 0; v < 4; ++v)
    for (int j = 0; j < 4; ++j) subs[v][j] = m[v][j];
  return substitute(f, subs);
}

MultiForm change_coordinates(const MultiForm& f, const Mat2& xblock, const Mat2& yblock) {
  if (f.grading.kind != GradingKind::Bidegree)
    fail(ErrorCode::Grading, "block coordinate change requires a Bidegree form");
  return change_coordinates(f, mat4_from_blocks(xblock, yblock));
}

// ---------------------------------------------------------------------------
// reduction modulo a quadric

namespace {

bool divisible(const Expo& e, const Expo& m) {
  for (int i = 0; i < 4; ++i)
    if (e[i] < m[i]) return false;
  return true;
}

// Integer weight vector making m0 strictly heaviest among the exponents of q;
// exists iff m0 is a vertex of q's Newton polytope.
std::optional<std::array<int, 4>> separating_weights(const std::vector<Expo>& others, const Expo& m0) {
  const int R = 6;
  std::array<int, 4> w{};
  for (w[0] = -R; w[0] <= R; ++w[0])
    for (w[1] = -R; w[1] <= R; ++w[1])
      for (w[2] = -R; w[2] <= R; ++w[2])
        for (w[3] = -R; w[3] <= R; ++w[3]) {
          bool ok = true;
          long wm0 = 0;
          for (int i = 0; i < 4; ++i) wm0 += static_cast<long>(w[i]) * m0[i];
          for (const Expo& e : others) {
            long we = 0;
            for (int i = 0; i < 4; ++i) we += static_cast<long>(w[i]) * e[i];
            if (we >= wm0) {
              ok = false;
              break;
            }
          }
          if (ok) return w;
        }
  return std::nullopt;
}

}  // namespace

MultiForm reduce_mod_quadric(const MultiForm& g, const MultiForm& q, const Expo& eliminated_monomial) {
  if (q.grading.kind != GradingKind::Homogeneous || q.grading.deg_a != 2)
    fail(ErrorCode::Grading, "the modulus must be a Homogeneous(2) form");
  auto it = q.terms.find(eliminated_monomial);
  if (it == q.terms.end())
    fail(ErrorCode::Elimination, "eliminated monomial is absent from the quadric");
  Rat lead = it->second;

  std::vector<Expo> others;
  TermMap tail;  // q minus the eliminated term, negated and normalized
  for (const auto& [e, c] : q.terms) {
    if (e == eliminated_monomial) continue;
    others.push_back(e);
    tail.emplace(e, -c / lead);
  }
  auto w = separating_weights(others, eliminated_monomial);
  if (!w) fail(ErrorCode::Elimination, "eliminated monomial is not extreme in the quadric");

  auto weight = [&](const Expo& e) {
    long s = 0;
    for (int i = 0; i < 4; ++i) s += static_cast<long>((*w)[i]) * e[i];
    return s;
  };

  // Division: repeatedly rewrite the heaviest reducible monomial. Each step
  // strictly lowers its weight, so this terminates.
  TermMap work = g.terms;
  while (true) {
    const Expo* target = nullptr;
    long best = 0;
    for (const auto& [e, c] : work) {
      if (!divisible(e, eliminated_monomial)) continue;
      long we = weight(e);
      if (!target || we > best) {
        target = &e;
        best = we;
      }
    }
    if (!target) break;
    Expo e = *target;
    Rat c = work.at(e);
    work.erase(e);
    Expo rest{e[0] - eliminated_monomial[0], e[1] - eliminated_monomial[1],
              e[2] - eliminated_monomial[2], e[3] - eliminated_monomial[3]};
    for (const auto& [te, tc] : tail) {
      Expo en{rest[0] + te[0], rest[1] + te[1], rest[2] + te[2], rest[3] + te[3]};
      insert_term(work, en, c * tc);
    }
  }
  MultiForm r{g.grading, std::move(work)};
  check_homogeneous(r);
  return r;
}

}  // namespace kwall
