#pragma once

#include <numeric>
#include <vector>

namespace sss {

class UnionFind {
public:
    int add() {
        parent_.push_back(int(parent_.size()));
        rank_.push_back(0);
        return parent_.back();
    }
    void resize(size_t n) {
        size_t old = parent_.size();
        parent_.resize(n);
        rank_.resize(n, 0);
        std::iota(parent_.begin() + old, parent_.end(), int(old));
    }
    size_t size() const { return parent_.size(); }

    int find(int x) {
        int r = x;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[x] != r) {
            int n = parent_[x];
            parent_[x] = r;
            x = n;
        }
        return r;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

} // namespace sss
