#include "coxvis/coxeter_system.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "coxvis/errors.hpp"

namespace coxvis {

CoxeterMatrix::CoxeterMatrix(std::size_t rank)
    : rank_(rank), orders_(rank * rank, kInfiniteOrder) {}

EdgeOrder CoxeterMatrix::get(GenIndex s, GenIndex t) const {
  return orders_[static_cast<std::size_t>(s) * rank_ + t];
}

void CoxeterMatrix::set(GenIndex s, GenIndex t, EdgeOrder order) {
  if (s == t || s >= rank_ || t >= rank_) {
    throw DomainError("Coxeter matrix entry must join two distinct declared generators");
  }
  if (order < 2) throw DomainError("Coxeter matrix entry below 2");
  orders_[static_cast<std::size_t>(s) * rank_ + t] = order;
  orders_[static_cast<std::size_t>(t) * rank_ + s] = order;
}

bool is_valid_generator_name(std::string_view name) {
  if (name.empty() || std::isdigit(static_cast<unsigned char>(name.front()))) return false;
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

CoxeterSystem::CoxeterSystem(std::vector<std::string> names, CoxeterMatrix matrix)
    : matrix_(std::move(matrix)) {
  if (names.size() > kMaxGenerators) {
    throw DomainError("at most " + std::to_string(kMaxGenerators) + " generators supported");
  }
  if (matrix_.rank() != names.size()) throw DomainError("matrix rank does not match generator count");
  generators_.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!is_valid_generator_name(names[i])) throw DomainError("invalid generator name '" + names[i] + "'");
    if (find(names[i])) throw DomainError("duplicate generator '" + names[i] + "'");
    generators_.push_back(Generator{std::move(names[i]), static_cast<GenIndex>(i)});
  }
  diagram_adj_.resize(rank());
  coxeter_adj_.resize(rank());
  for (GenIndex s = 0; s < rank(); ++s) {
    for (GenIndex t = 0; t < rank(); ++t) {
      if (s == t) continue;
      const EdgeOrder m = matrix_.get(s, t);
      if (m != kInfiniteOrder) diagram_adj_[s].insert(t);
      if (m != 2) coxeter_adj_[s].insert(t);
    }
  }
}

std::optional<GenIndex> CoxeterSystem::find(std::string_view name) const {
  for (const auto& g : generators_) {
    if (g.name == name) return g.index;
  }
  return std::nullopt;
}

GeneratorSubset CoxeterSystem::subset(std::string_view names) const {
  GeneratorSubset out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    auto g = find(token);
    if (!g) throw DomainError("unknown generator '" + token + "'");
    out.insert(*g);
    token.clear();
  };
  for (char c : names) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '{' || c == '}') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

CoxeterSystem parse_system(std::string_view text) {
  std::vector<std::string> names;
  struct Relation {
    std::size_t line;
    GenIndex s, t;
    EdgeOrder order;
  };
  std::vector<Relation> relations;
  bool have_gens = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (!have_gens) {
      if (tokens[0] != "gens") throw ParseError(line_no, "expected 'gens' declaration first");
      if (tokens.size() < 2) throw ParseError(line_no, "'gens' needs at least one generator");
      if (tokens.size() - 1 > kMaxGenerators) {
        throw ParseError(line_no, "at most " + std::to_string(kMaxGenerators) + " generators supported");
      }
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string name(tokens[i]);
        if (!is_valid_generator_name(name)) throw ParseError(line_no, "invalid generator name '" + name + "'");
        for (const auto& prev : names) {
          if (prev == name) throw ParseError(line_no, "duplicate generator '" + name + "'");
        }
        names.push_back(std::move(name));
      }
      have_gens = true;
    } else {
      if (tokens[0] == "gens") throw ParseError(line_no, "second 'gens' declaration");
      if (tokens[0] != "m") throw ParseError(line_no, "unknown directive '" + std::string(tokens[0]) + "'");
      if (tokens.size() != 4) throw ParseError(line_no, "expected 'm <name> <name> <order>'");
      auto lookup = [&](std::string_view n) -> GenIndex {
        for (std::size_t i = 0; i < names.size(); ++i) {
          if (names[i] == n) return static_cast<GenIndex>(i);
        }
        throw ParseError(line_no, "undeclared generator '" + std::string(n) + "'");
      };
      const GenIndex s = lookup(tokens[1]);
      const GenIndex t = lookup(tokens[2]);
      if (s == t) throw ParseError(line_no, "relation pairs a generator with itself");
      unsigned long long k = 0;
      auto [ptr, ec] = std::from_chars(tokens[3].data(), tokens[3].data() + tokens[3].size(), k);
      if (ec != std::errc{} || ptr != tokens[3].data() + tokens[3].size()) {
        throw ParseError(line_no, "order must be a positive integer");
      }
      if (k < 2) throw ParseError(line_no, "order below 2");
      if (k >= kInfiniteOrder) throw ParseError(line_no, "order too large");
      relations.push_back({line_no, s, t, static_cast<EdgeOrder>(k)});
    }
    if (end == text.size()) break;
  }
  if (!have_gens) throw ParseError(0, "missing 'gens' declaration");

  CoxeterMatrix matrix(names.size());
  for (const auto& r : relations) {
    const EdgeOrder prev = matrix.get(r.s, r.t);
    if (prev != kInfiniteOrder && prev != r.order) {
      throw ParseError(r.line, "conflicting orders for pair " + names[r.s] + " " + names[r.t]);
    }
    matrix.set(r.s, r.t, r.order);
  }
  return CoxeterSystem(std::move(names), std::move(matrix));
}

std::string emit_system(const CoxeterSystem& sys) {
  std::ostringstream out;
  out << "gens";
  for (const auto& g : sys.generators()) out << ' ' << g.name;
  out << '\n';
  for (GenIndex s = 0; s < sys.rank(); ++s) {
    for (GenIndex t = s + 1; t < sys.rank(); ++t) {
      const EdgeOrder m = sys.order(s, t);
      if (m != kInfiniteOrder) out << "m " << sys.name(s) << ' ' << sys.name(t) << ' ' << m << '\n';
    }
  }
  return out.str();
}

CoxeterSystem induced_subsystem(const CoxeterSystem& sys, GeneratorSubset members) {
  if (!members.subset_of(sys.all())) throw DomainError("subset member outside the generator set");
  const auto idx = members.members();
  std::vector<std::string> names;
  names.reserve(idx.size());
  for (GenIndex g : idx) names.push_back(sys.name(g));
  CoxeterMatrix matrix(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      const EdgeOrder m = sys.order(idx[i], idx[j]);
      if (m != kInfiniteOrder) matrix.set(static_cast<GenIndex>(i), static_cast<GenIndex>(j), m);
    }
  }
  return CoxeterSystem(std::move(names), std::move(matrix));
}

std::string format_subset(const CoxeterSystem& sys, GeneratorSubset set) {
  std::string out = "{";
  bool first = true;
  for (GenIndex g : set.members()) {
    if (!first) out += ',';
    out += sys.name(g);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace coxvis
