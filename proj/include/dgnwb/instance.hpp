#pragma once

#include <optional>
#include <string>

#include "htriple.hpp"

namespace dgnwb {

// Instance data: N normal in G, M/N a normal p-subgroup of G/N, theta in
// IBr(N) M-invariant of defect zero.  D may be supplied; otherwise it is the
// least defect group complement of the covering block.
struct Instance {
  Group g, n, m;
  BrauerChar theta;
  std::optional<Group> d;
};

struct Prepared {
  Instance inst;
  Group d, c, h;
  DgnResult dgn;
  BrauerChar phi;
  HTriple t1, t2;
};

inline Prepared prepare(Workspace& ws, const Instance& in) {
  const Group &g = in.g, &n = in.n, &m = in.m;
  int p = ws.p();
  require(n.is_subgroup_of(m) && m.is_subgroup_of(g), "need N <= M <= G");
  require(is_normal(n, g) && is_normal(m, g), "N and M must be normal in G");
  require(is_p_group(quotient(m, n).bar, p), "M/N is not a p-group");
  require(in.theta.group == n && ws.index_in_ibr(in.theta) >= 0, "theta is not in IBr(N)");
  require(is_defect_zero(in.theta), "theta does not have p-defect zero");
  require(char_stabilizer(in.theta, m) == m, "theta is not M-invariant");
  HTriple t1 = make_htriple(ws, g, n, in.theta);
  Group d;
  if (in.d) {
    d = *in.d;
    require(d.is_subgroup_of(m) && is_p_group(d, p), "D must be a p-subgroup of M");
    require(intersection(n, d).is_trivial() && static_cast<long long>(n.order()) * d.order() == m.order(),
            "Fong identity ND=M and N∩D=1 fails for the supplied D");
  } else {
    Block cover = covering_block(ws, m, block_of(block_idempotents(ws, n), in.theta));
    d = defect_group(ws, m, n, cover);
  }
  DgnResult r = dgn_correspondent(ws, n, m, in.theta, d);
  Group h = normalizer(g, d);
  HTriple t2 = make_htriple(ws, h, r.c, r.phi);
  return {in, d, r.c, h, r, r.phi, std::move(t1), std::move(t2)};
}

}  // namespace dgnwb
