#include "treecount/matching_io.hpp"

#include <cstdio>
#include <ostream>

#include "detail/text_lines.hpp"

namespace treecount {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matching(std::ostream& out, const PerfectFractionalMatching& x) {
  const Digraph& g = x.host();
  out << "pfm " << g.n() << ' ' << g.arc_count() << '\n';
  for (std::size_t id = 0; id < g.arc_count(); ++id) {
    const Arc a = g.arc(static_cast<int>(id));
    out << a.tail << ' ' << a.head << ' ' << format_double(x.weight(static_cast<int>(id))) << '\n';
  }
}

namespace {

struct RawMatching {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;
  std::vector<double> weights;
  int last_line = 0;
};

RawMatching read_raw(detail::LineReader& r) {
  std::vector<std::string_view> tok;
  if (!r.next(tok)) r.fail("missing header line");
  if (tok.size() != 3 || tok[0] != "pfm") r.fail("header must be 'pfm <n> <m>'");
  RawMatching raw;
  const long long n = r.integer(tok[1], "vertex count");
  const long long m = r.integer(tok[2], "arc count");
  if (n < 0 || m < 0) r.fail("negative count in header");
  raw.n = static_cast<int>(n);
  for (long long k = 0; k < m; ++k) {
    if (!r.next(tok)) r.fail("expected " + std::to_string(m) + " weighted arcs, found " + std::to_string(k));
    if (tok.size() != 3) r.fail("arc line must be '<u> <v> <weight>'");
    const long long u = r.integer(tok[0], "tail");
    const long long v = r.integer(tok[1], "head");
    if (u < 0 || u >= n || v < 0 || v >= n || u == v) r.fail("arc endpoints invalid");
    raw.arcs.emplace_back(static_cast<int>(u), static_cast<int>(v));
    raw.weights.push_back(r.real(tok[2], "weight"));
  }
  if (r.next(tok)) r.fail("trailing content after the arc list");
  return raw;
}

PerfectFractionalMatching assemble(detail::LineReader& r, RawMatching raw, std::shared_ptr<const Digraph> host) {
  if (host->n() != raw.n) r.fail("matching vertex count differs from the host");
  if (host->arc_count() != raw.arcs.size()) r.fail("matching arc count differs from the host");
  std::vector<double> w(host->arc_count(), -1.0);
  for (std::size_t k = 0; k < raw.arcs.size(); ++k) {
    const int id = host->arc_id(raw.arcs[k].first, raw.arcs[k].second);
    if (id < 0) r.fail("arc " + std::to_string(raw.arcs[k].first) + "->" + std::to_string(raw.arcs[k].second) + " is not in the host");
    if (w[id] >= 0.0) r.fail("arc listed twice");
    w[id] = raw.weights[k];
  }
  return PerfectFractionalMatching(std::move(host), std::move(w));
}

}  // namespace

PerfectFractionalMatching read_matching(std::istream& in, std::shared_ptr<const Digraph> host,
                                        const std::string& source) {
  detail::LineReader r(in, source);
  return assemble(r, read_raw(r), std::move(host));
}

PerfectFractionalMatching read_matching(std::istream& in, const std::string& source) {
  detail::LineReader r(in, source);
  RawMatching raw = read_raw(r);
  std::shared_ptr<const Digraph> host;
  try {
    host = std::make_shared<const Digraph>(raw.n, raw.arcs);
  } catch (const InputError& e) {
    r.fail(e.what());
  }
  return assemble(r, std::move(raw), std::move(host));
}

}  // namespace treecount
