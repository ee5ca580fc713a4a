// ExplicitFamily and the family/shorthand text parser.
#include "core/family.hpp"

#include <algorithm>
#include <charconv>

#include "core/containment.hpp"

namespace satkit {

namespace {

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw Error("family parse: bad " + std::string(what) + " \"" + std::string(s) + "\"");
  return v;
}

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

// atom := K<k> | K:<k>[:<l>] | T:<k>:<lo>[-<hi>] | C:<digits>
Matrix parse_atom(std::string_view a) {
  if (a.empty()) throw Error("family parse: empty term");
  if (a[0] == 'K') {
    std::string_view rest = a.substr(1);
    if (!rest.empty() && rest[0] != ':') return build_K(parse_int(rest, "order in K<k>"));
    std::vector<std::string_view> parts;
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t c = rest.find(':', pos + 1);
      parts.push_back(rest.substr(pos + 1, (c == std::string_view::npos ? rest.size() : c) - pos - 1));
      if (c == std::string_view::npos) break;
      pos = c;
    }
    if (parts.size() == 1) return build_K(parse_int(parts[0], "order in K:<k>"));
    if (parts.size() == 2)
      return build_K_l(parse_int(parts[0], "order in K:<k>:<l>"), parse_int(parts[1], "alphabet in K:<k>:<l>"));
    throw Error("family parse: malformed K term \"" + std::string(a) + "\"");
  }
  if (a[0] == 'T') {
    if (a.size() < 2 || a[1] != ':') throw Error("family parse: malformed T term \"" + std::string(a) + "\"");
    size_t c2 = a.find(':', 2);
    if (c2 == std::string_view::npos)
      throw Error("family parse: T term needs T:<k>:<range> in \"" + std::string(a) + "\"");
    int k = parse_int(a.substr(2, c2 - 2), "order in T term");
    std::string_view range = a.substr(c2 + 1);
    size_t dash = range.find('-');
    int lo, hi;
    if (dash == std::string_view::npos) {
      lo = hi = parse_int(range, "column sum in T term");
    } else {
      lo = parse_int(range.substr(0, dash), "range start in T term");
      hi = parse_int(range.substr(dash + 1), "range end in T term");
    }
    return build_T(k, lo, hi);
  }
  if (a[0] == 'C') {
    if (a.size() < 2 || a[1] != ':') throw Error("family parse: malformed C term \"" + std::string(a) + "\"");
    std::string_view digits = a.substr(2);
    if (digits.empty()) throw Error("family parse: C term needs at least one digit");
    Column col;
    int l = 1;
    for (char ch : digits) {
      if (ch < '0' || ch > '9') throw Error("family parse: C term digits must be 0-9");
      col.push_back(static_cast<std::uint8_t>(ch - '0'));
      l = std::max(l, ch - '0');
    }
    const int rows = static_cast<int>(col.size());
    return make_matrix(rows, l, {std::move(col)});
  }
  throw Error("family parse: unrecognized term \"" + std::string(a) + "\"");
}

// term := [<count>*] atom
Matrix parse_term(std::string_view t) {
  size_t star = t.find('*');
  int count = 1;
  if (star != std::string_view::npos && star > 0 && t[0] >= '0' && t[0] <= '9') {
    count = parse_int(t.substr(0, star), "repetition count");
    if (count < 1) throw Error("family parse: repetition count must be >= 1");
    t = t.substr(star + 1);
  }
  Matrix atom = parse_atom(trim(t));
  Matrix out = atom;
  for (int i = 1; i < count; ++i) out = concat(out, atom);
  return out;
}

}  // namespace

Matrix parse_member(std::string_view block) {
  block = trim(block);
  if (block.empty()) throw Error("family parse: empty member block");
  // A block with a newline is a matrix literal, as is a lone header line
  // ("n m l", an empty matrix): literals always contain whitespace, while
  // shorthand terms ("K3", "3*T:2:2", "C:01+T:2:2") never do.
  if (block.find('\n') != std::string_view::npos ||
      ((block[0] >= '0' && block[0] <= '9') && block.find(' ') != std::string_view::npos))
    return parse_matrix(block);
  std::vector<Matrix> pieces;
  size_t pos = 0;
  while (pos <= block.size()) {
    size_t plus = block.find('+', pos);
    std::string_view term = block.substr(pos, (plus == std::string_view::npos ? block.size() : plus) - pos);
    pieces.push_back(parse_term(trim(term)));
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  Matrix out = pieces[0];
  for (size_t i = 1; i < pieces.size(); ++i) out = concat(out, pieces[i]);
  return out;
}

std::shared_ptr<const ExplicitFamily> parse_family(std::string_view text) {
  std::vector<Matrix> members;
  size_t pos = 0;
  std::string block;
  auto flush = [&] {
    std::string_view b = trim(block);
    if (!b.empty()) members.push_back(parse_member(b));
    block.clear();
  };
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, (nl == std::string_view::npos ? text.size() : nl) - pos);
    if (trim(line).empty())
      flush();
    else {
      block.append(line);
      block.push_back('\n');
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush();
  if (members.empty()) throw Error("family parse: no members found");
  return std::make_shared<ExplicitFamily>(std::move(members));
}

std::shared_ptr<const ExplicitFamily> single_member_family(Matrix F) {
  std::vector<Matrix> ms;
  ms.push_back(std::move(F));
  return std::make_shared<ExplicitFamily>(std::move(ms));
}

ExplicitFamily::ExplicitFamily(std::vector<Matrix> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error("family: needs at least one member");
  for (const Matrix& F : members_) {
    if (F.m() == 0) throw Error("family: members must have at least one column");
    alphabet_ = std::max(alphabet_, F.l);
  }
}

bool ExplicitFamily::violates(const Matrix& M) const {
  for (const Matrix& F : members_)
    if (contains_any(M, F)) return true;
  return false;
}

bool ExplicitFamily::creates_unchecked(const Matrix& M, const Column& C) const {
  Matrix ext = M;
  ext.cols.push_back(C);
  ext.simple = false;  // only containment runs on ext; flag accuracy is irrelevant here
  for (const Matrix& F : members_)
    if (contains_any(ext, F)) return true;
  return false;
}

std::string ExplicitFamily::encoding() const {
  std::vector<std::string> enc;
  enc.reserve(members_.size());
  for (const Matrix& F : members_) enc.push_back(format_matrix(canonical_form(F)));
  std::sort(enc.begin(), enc.end());
  std::string out = "family/explicit\n";
  for (const std::string& e : enc) out += e + "-\n";
  return out;
}

int ForbiddenFamily::multiplicity_cap() const {
  const std::vector<Matrix>* mem = members();
  if (!mem) throw Error("family: multiplicity cap unavailable for this derived family");
  int cap = 1;
  for (const Matrix& F : *mem) cap = std::max(cap, F.m() + 1);
  return cap;
}

bool family_free(const Matrix& M, const ForbiddenFamily& fam) { return !fam.violates(M); }

bool creates(const Matrix& M, const Column& C, const ForbiddenFamily& fam) {
  for (const Column& c : M.cols)
    if (c == C) throw Error("creates: column is already present in the matrix");
  return fam.creates_unchecked(M, C);
}

}  // namespace satkit
