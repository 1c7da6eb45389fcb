#include "flexline/config.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "flexline/error.hpp"

namespace flexline {

LineConfiguration LineConfiguration::from_flexes(const Field& field, const std::vector<FlexRecord>& records) {
  LineConfiguration out(field);
  for (const auto& r : records) out.add(r.line, r.weight);
  return out;
}

void LineConfiguration::add(const ProjPoint& line, int weight) {
  if (weight <= 0) throw Error(Errc::InvalidArgument, "weights must be positive");
  entries_[line] += weight;
}

int LineConfiguration::weight(const ProjPoint& line) const {
  const auto it = entries_.find(line);
  return it == entries_.end() ? 0 : it->second;
}

int LineConfiguration::total_weight() const {
  int s = 0;
  for (const auto& [p, w] : entries_) s += w;
  return s;
}

std::map<int, int> LineConfiguration::weight_histogram() const {
  std::map<int, int> h;
  for (const auto& [p, w] : entries_) ++h[w];
  return h;
}

std::vector<ProjPoint> LineConfiguration::support(std::optional<int> weight) const {
  std::vector<ProjPoint> out;
  for (const auto& [p, w] : entries_) {
    if (!weight || *weight == w) out.push_back(p);
  }
  return out;
}

LineConfiguration LineConfiguration::mapped(const Embedding& e) const {
  LineConfiguration out(e.target());
  for (const auto& [p, w] : entries_) out.add(p.mapped(e), w);
  return out;
}

LineConfiguration LineConfiguration::transformed(const ProjMap& m) const {
  LineConfiguration out(field_);
  const Mat3 dual = m.matrix().adjugate().transpose();
  for (const auto& [p, w] : entries_) out.add(ProjPoint(dual * p.coords()), w);
  return out;
}

namespace {

// Point action N on dual coordinates; weights must match.
bool dual_carries(const Mat3& n, const LineConfiguration& a, const LineConfiguration& b) {
  for (const auto& [p, w] : a.entries()) {
    const Vec3 image = n * p.coords();
    if (is_zero(image) || b.weight(ProjPoint(image)) != w) return false;
  }
  return true;
}

nlohmann::ordered_json element_json(const Field& f, const Fe& a) {
  if (f.degree() == 1) return a.coeff(0);
  return f.format(a);
}

Fe element_from_json(const Field& f, const nlohmann::json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
  if (j.is_string()) return f.parse_element(j.get<std::string>());
  throw Error(Errc::ParseError, "field element must be an integer or a string");
}

}  // namespace

bool LineConfiguration::carried_onto(const ProjMap& m, const LineConfiguration& other) const {
  if (size() != other.size()) return false;
  return dual_carries(m.matrix().adjugate().transpose(), *this, other);
}

nlohmann::ordered_json LineConfiguration::to_json() const {
  nlohmann::ordered_json j;
  j["field"] = field_.spec();
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& [p, w] : entries_) {
    nlohmann::ordered_json e;
    e["dual"] = {element_json(field_, p[0]), element_json(field_, p[1]), element_json(field_, p[2])};
    e["weight"] = w;
    j["points"].push_back(std::move(e));
  }
  return j;
}

LineConfiguration LineConfiguration::from_json(const nlohmann::json& j) {
  try {
    LineConfiguration out(Field::parse(j.at("field").get<std::string>()));
    for (const auto& e : j.at("points")) {
      const auto& d = e.at("dual");
      if (!d.is_array() || d.size() != 3) throw Error(Errc::ParseError, "dual coordinates need three entries");
      const Field& f = out.field_;
      out.add(ProjPoint(Vec3{element_from_json(f, d[0]), element_from_json(f, d[1]), element_from_json(f, d[2])}),
              e.at("weight").get<int>());
    }
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, ex.what());
  } catch (const Error& ex) {
    if (ex.code() == Errc::ParseError) throw;
    throw Error(Errc::ParseError, ex.what());
  }
}

std::string GroupDescriptor::name() const {
  using H = std::map<int, int>;
  if (abelian) return {};
  if (order == 6 && element_orders == H{{1, 1}, {2, 3}, {3, 2}}) return "S3";
  if (order == 24 && element_orders == H{{1, 1}, {2, 9}, {3, 8}, {4, 6}}) return "S4";
  if (order == 8 && element_orders == H{{1, 1}, {2, 5}, {4, 2}}) return "D4";
  if (order == 16 && element_orders == H{{1, 1}, {2, 9}, {4, 2}, {8, 4}}) return "D8";
  return {};
}

bool ProjGroup::contains(const ProjMap& m) const { return std::binary_search(elements.begin(), elements.end(), m); }

bool ProjGroup::verify_closure() const {
  if (elements.empty() || !contains(ProjMap::identity(field))) return false;
  for (const auto& a : elements) {
    if (!contains(a.inverse())) return false;
    for (const auto& b : elements) {
      if (!contains(a * b)) return false;
    }
  }
  return true;
}

int element_order(const ProjMap& m, int bound) {
  ProjMap power = m;
  for (int k = 1; k <= bound; ++k) {
    if (power.is_identity()) return k;
    power = power * m;
  }
  return 0;
}

GroupDescriptor describe(const std::vector<ProjMap>& elements) {
  GroupDescriptor d;
  d.order = static_cast<int>(elements.size());
  for (const auto& g : elements) ++d.element_orders[element_order(g, d.order)];
  for (std::size_t i = 0; i < elements.size() && d.abelian; ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (!(elements[i] * elements[j] == elements[j] * elements[i])) {
        d.abelian = false;
        break;
      }
    }
  }
  return d;
}

ProjGroup make_group(const Field& field, std::vector<ProjMap> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  ProjGroup g;
  g.field = field;
  g.descriptor = describe(elements);
  g.elements = std::move(elements);
  return g;
}

std::optional<std::array<ProjPoint, 4>> least_frame(const std::vector<ProjPoint>& s) {
  const std::size_t n = s.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (is_zero(cross(s[a].coords(), s[b].coords()))) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (det3(s[a].coords(), s[b].coords(), s[c].coords()).is_zero()) continue;
        for (std::size_t d = c + 1; d < n; ++d) {
          if (general_position(s[a].coords(), s[b].coords(), s[c].coords(), s[d].coords())) {
            return std::array<ProjPoint, 4>{s[a], s[b], s[c], s[d]};
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<ProjMap> transporters(const LineConfiguration& a, const LineConfiguration& b,
                                  const TransporterOptions& opts) {
  if (!(a.field() == b.field())) throw Error(Errc::InvalidArgument, "configurations over different fields");
  const auto frame = least_frame(a.support());
  if (!frame) throw Error(Errc::DegenerateConfiguration, "no four support lines in general position");
  std::vector<ProjMap> out;
  if (a.size() != b.size() || a.weight_histogram() != b.weight_histogram()) return out;

  // Candidate images of each frame line, by weight.
  std::array<std::vector<ProjPoint>, 4> cand;
  for (std::size_t i = 0; i < 4; ++i) cand[i] = b.support(a.weight((*frame)[i]));

  std::array<ProjPoint, 4> img;
  for (const auto& q0 : cand[0]) {
    img[0] = q0;
    for (const auto& q1 : cand[1]) {
      if (q1 == q0) continue;
      img[1] = q1;
      for (const auto& q2 : cand[2]) {
        if (q2 == q0 || q2 == q1 || det3(q0.coords(), q1.coords(), q2.coords()).is_zero()) continue;
        img[2] = q2;
        for (const auto& q3 : cand[3]) {
          if (!general_position(q0.coords(), q1.coords(), q2.coords(), q3.coords())) continue;
          img[3] = q3;
          // The frame map acts on dual coordinates; convert it to a point map.
          const ProjMap n = map_from_frames(*frame, img);
          if (!dual_carries(n.matrix(), a, b)) continue;
          out.emplace_back(n.matrix().adjugate().transpose());
          if (opts.limit != 0 && out.size() >= opts.limit) return out;
          if (out.size() > opts.group_cap) {
            throw Error(Errc::GroupTooLarge, "more than " + std::to_string(opts.group_cap) + " transporters");
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ProjGroup automorphism_group(const LineConfiguration& a) { return make_group(a.field(), transporters(a, a)); }

ProjGroup curve_automorphisms(const HomPoly& f, const Embedding& into_group_field, const ProjGroup& g) {
  const HomPoly fl = f.mapped(into_group_field);
  std::vector<ProjMap> keep;
  for (const auto& m : g.elements) {
    if (proportional(substitute(fl, m.matrix()), fl)) keep.push_back(m);
  }
  return make_group(g.field, std::move(keep));
}

namespace {

struct RichLine {
  std::uint32_t mask = 0;
  int count = 0;
};

// Lines through at least three support points, as bitmasks over the support.
std::vector<RichLine> rich_lines(const std::vector<ProjPoint>& s) {
  std::unordered_set<std::uint32_t> seen;
  std::vector<RichLine> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const Vec3 l = cross(s[i].coords(), s[j].coords());
      std::uint32_t mask = 0;
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (dot(l, s[k].coords()).is_zero()) mask |= 1U << k;
      }
      const int count = std::popcount(mask);
      if (count >= 3 && seen.insert(mask).second) out.push_back({mask, count});
    }
  }
  std::sort(out.begin(), out.end(), [](const RichLine& x, const RichLine& y) {
    return x.count != y.count ? x.count > y.count : x.mask < y.mask;
  });
  return out;
}

// A line through at most two uncovered points is always available, so the
// remainder after choosing rich lines costs ceil(r / 2).
void cover_search(const std::vector<RichLine>& lines, std::size_t next, std::uint32_t uncovered, int used, int& best) {
  const int r = std::popcount(uncovered);
  best = std::min(best, used + (r + 1) / 2);
  if (r <= 2 || next >= lines.size()) return;
  int widest = 2;
  for (std::size_t i = next; i < lines.size(); ++i) widest = std::max(widest, std::popcount(lines[i].mask & uncovered));
  if (used + (r + widest - 1) / widest >= best) return;
  if (widest == 2) return;
  const std::uint32_t gain = lines[next].mask & uncovered;
  if (std::popcount(gain) >= 3) cover_search(lines, next + 1, uncovered & ~gain, used + 1, best);
  cover_search(lines, next + 1, uncovered, used, best);
}

}  // namespace

SupportSignature support_signature(const LineConfiguration& a) {
  if (a.empty()) throw Error(Errc::InvalidArgument, "empty configuration");
  const auto s = a.support();
  if (s.size() > 32) throw Error(Errc::InvalidArgument, "support too large for the signature");
  SupportSignature sig;
  const auto lines = rich_lines(s);
  sig.max_collinear = s.size() >= 2 ? 2 : 1;
  for (const auto& l : lines) {
    sig.max_collinear = std::max(sig.max_collinear, l.count);
    ++sig.collinear_profile[l.count];
  }
  const std::uint32_t all = s.size() == 32 ? ~0U : (1U << s.size()) - 1;
  sig.line_cover = static_cast<int>(s.size() + 1) / 2;
  cover_search(lines, 0, all, 0, sig.line_cover);

  // An empty weight class has no meaningful conic.
  const auto w2 = a.support(2);
  const auto fit2 = conic_through(a.field(), w2);
  sig.hyperflex_conic_rank = fit2.rank;
  if (!w2.empty()) sig.hyperflex_conic = fit2.conic;
  const auto w1 = a.support(1);
  const auto fit1 = conic_through(a.field(), w1);
  sig.simple_flex_conic_rank = fit1.rank;
  if (!w1.empty()) sig.simple_flex_conic = fit1.conic;
  return sig;
}

InvariantKey invariant_key(const LineConfiguration& a) {
  const auto sig = support_signature(a);
  return {a.weight_histogram(), sig.collinear_profile, sig.hyperflex_conic_rank, sig.simple_flex_conic_rank};
}

}  // namespace flexline
