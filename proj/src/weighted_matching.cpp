#include "ucvrp/weighted_matching.hpp"

#include <algorithm>
#include <stdexcept>

namespace ucvrp {

namespace {

// Endpoint p of edge k is vertex edges[p / 2].{u,v}[p % 2]; p ^ 1 is the
// opposite end. Labels: 0 free, 1 S, 2 T; bit 4 marks a blossom scan.
class Blossom {
public:
  Blossom(int nv, const std::vector<WeightedEdge>& edges)
      : nv_(nv), edges_(edges), ne_(static_cast<int>(edges.size())) {
    std::int64_t maxw = 0;
    for (auto& e : edges_) {
      if (e.u < 0 || e.v < 0 || e.u >= nv || e.v >= nv || e.u == e.v) {
        throw std::invalid_argument("matching edge with bad endpoints");
      }
      e.weight *= 2; // keeps every dual update integral
      maxw = std::max(maxw, e.weight);
    }
    endpoint_.resize(2 * ne_);
    neighbend_.assign(nv, {});
    for (int k = 0; k < ne_; ++k) {
      endpoint_[2 * k] = edges_[k].u;
      endpoint_[2 * k + 1] = edges_[k].v;
      neighbend_[edges_[k].u].push_back(2 * k + 1);
      neighbend_[edges_[k].v].push_back(2 * k);
    }
    mate_.assign(nv, -1);
    label_.assign(2 * nv, 0);
    labelend_.assign(2 * nv, -1);
    inblossom_.resize(nv);
    for (int i = 0; i < nv; ++i) {
      inblossom_[i] = i;
    }
    blossomparent_.assign(2 * nv, -1);
    blossomchilds_.assign(2 * nv, {});
    blossombase_.assign(2 * nv, -1);
    for (int i = 0; i < nv; ++i) {
      blossombase_[i] = i;
    }
    blossomendps_.assign(2 * nv, {});
    bestedge_.assign(2 * nv, -1);
    blossombestedges_.assign(2 * nv, {});
    hasbestedges_.assign(2 * nv, false);
    for (int b = 2 * nv - 1; b >= nv; --b) {
      unused_.push_back(b);
    }
    // unused_ is used as a stack; pop from the back yields the largest id
    // first, matching the reference implementation's list.pop().
    std::reverse(unused_.begin(), unused_.end());
    dualvar_.assign(2 * nv, 0);
    for (int i = 0; i < nv; ++i) {
      dualvar_[i] = maxw;
    }
    allowedge_.assign(ne_, false);
  }

  std::vector<int> solve() {
    for (int stage = 0; stage < nv_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = nv_; b < 2 * nv_; ++b) {
        blossombestedges_[b].clear();
        hasbestedges_[b] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();
      for (int v = 0; v < nv_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
          assign_label(v, 1, -1);
        }
      }
      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          for (const int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) {
              continue;
            }
            std::int64_t kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) {
                allowedge_[k] = true;
              }
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                bestedge_[b] = k;
              }
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                bestedge_[w] = k;
              }
            }
          }
        }
        if (augmented) {
          break;
        }

        int deltatype = 1;
        std::int64_t delta = *std::min_element(dualvar_.begin(),
                                               dualvar_.begin() + nv_);
        int deltaedge = -1;
        int deltablossom = -1;
        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const std::int64_t d = slack(bestedge_[v]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * nv_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            const std::int64_t d = slack(bestedge_[b]) / 2;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 &&
              label_[b] == 2 && dualvar_[b] < delta) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }

        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 1) {
            dualvar_[v] -= delta;
          } else if (label_[inblossom_[v]] == 2) {
            dualvar_[v] += delta;
          }
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) {
          break;
        }
        if (deltatype == 2) {
          allowedge_[deltaedge] = true;
          int i = edges_[deltaedge].u;
          if (label_[inblossom_[i]] == 0) {
            i = edges_[deltaedge].v;
          }
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          queue_.push_back(edges_[deltaedge].u);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) {
        break;
      }
      for (int b = nv_; b < 2 * nv_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 &&
            label_[b] == 1 && dualvar_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }
    std::vector<int> out(nv_, -1);
    for (int v = 0; v < nv_; ++v) {
      if (mate_[v] >= 0) {
        out[v] = endpoint_[mate_[v]];
      }
    }
    return out;
  }

private:
  std::int64_t slack(int k) const {
    return dualvar_[edges_[k].u] + dualvar_[edges_[k].v] - 2 * edges_[k].weight;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < nv_) {
      out.push_back(b);
      return;
    }
    for (const int t : blossomchilds_[b]) {
      leaves(t, out);
    }
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) {
        std::swap(v, w);
      }
    }
    for (const int b : path) {
      label_[b] = 1;
    }
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unused_.back();
    unused_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (const int leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) {
        queue_.push_back(leaf);
      }
      inblossom_[leaf] = b;
    }
    std::vector<int> bestedgeto(2 * nv_, -1);
    for (const int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!hasbestedges_[child]) {
        for (const int leaf : leaves(child)) {
          std::vector<int> list;
          for (const int p : neighbend_[leaf]) {
            list.push_back(p / 2);
          }
          nblists.push_back(std::move(list));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& list : nblists) {
        for (const int kk : list) {
          int i = edges_[kk].u;
          int j = edges_[kk].v;
          if (inblossom_[j] == b) {
            std::swap(i, j);
          }
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = kk;
          }
        }
      }
      blossombestedges_[child].clear();
      hasbestedges_[child] = false;
      bestedge_[child] = -1;
    }
    blossombestedges_[b].clear();
    for (const int kk : bestedgeto) {
      if (kk != -1) {
        blossombestedges_[b].push_back(kk);
      }
    }
    hasbestedges_[b] = true;
    bestedge_[b] = -1;
    for (const int kk : blossombestedges_[b]) {
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
        bestedge_[b] = kk;
      }
    }
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> childs = blossomchilds_[b];
    for (const int s : childs) {
      blossomparent_[s] = -1;
      if (s < nv_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (const int leaf : leaves(s)) {
          inblossom_[leaf] = s;
        }
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& ch = blossomchilds_[b];
      const auto& ep = blossomendps_[b];
      const int len = static_cast<int>(ch.size());
      const auto at = [len](int j) { return ((j % len) + len) % len; };
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) -
                               ch.begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[ep[at(j - endptrick)] ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[ep[at(j - endptrick)] / 2] = true;
        j += jstep;
        p = ep[at(j - endptrick)] ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      int bv = ch[at(j)];
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (ch[at(j)] != entrychild) {
        bv = ch[at(j)];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (const int leaf : leaves(bv)) {
          if (label_[leaf] != 0) {
            found = leaf;
            break;
          }
        }
        if (found >= 0) {
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    hasbestedges_[b] = false;
    bestedge_[b] = -1;
    unused_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) {
      t = blossomparent_[t];
    }
    if (t >= nv_) {
      augment_blossom(t, v);
    }
    auto& ch = blossomchilds_[b];
    auto& ep = blossomendps_[b];
    const int len = static_cast<int>(ch.size());
    const auto at = [len](int j) { return ((j % len) + len) % len; };
    const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) -
                                   ch.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = ch[at(j)];
      const int p = ep[at(j - endptrick)] ^ endptrick;
      if (t >= nv_) {
        augment_blossom(t, endpoint_[p]);
      }
      j += jstep;
      t = ch[at(j)];
      if (t >= nv_) {
        augment_blossom(t, endpoint_[p ^ 1]);
      }
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    blossombase_[b] = blossombase_[ch[0]];
  }

  void augment_matching(int k) {
    const int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
    for (const auto& end : ends) {
      int s = end[0];
      int p = end[1];
      while (true) {
        const int bs = inblossom_[s];
        if (bs >= nv_) {
          augment_blossom(bs, s);
        }
        mate_[s] = p;
        if (labelend_[bs] == -1) {
          break;
        }
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= nv_) {
          augment_blossom(bt, j);
        }
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int nv_;
  std::vector<WeightedEdge> edges_;
  int ne_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<bool> hasbestedges_;
  std::vector<int> unused_;
  std::vector<std::int64_t> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<int> queue_;
};

} // namespace

std::vector<int> max_weight_matching(int vertex_count,
                                     const std::vector<WeightedEdge>& edges) {
  if (vertex_count <= 0 || edges.empty()) {
    return std::vector<int>(std::max(vertex_count, 0), -1);
  }
  return Blossom(vertex_count, edges).solve();
}

} // namespace ucvrp
