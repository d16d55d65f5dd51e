// Nonempty binary trees of +-combinations. The sum of a tree combines its
// leaves with the frame's + exactly as the tree is parenthesised.
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace mav {

template <class Leaf>
class PlusTree {
public:
    static PlusTree leaf(Leaf v) {
        auto n = std::make_shared<Node>();
        n->value.emplace(std::move(v));
        n->leaves = 1;
        return PlusTree(std::move(n));
    }

    static PlusTree node(const PlusTree& l, const PlusTree& r) {
        auto n = std::make_shared<Node>();
        n->l = l.n_;
        n->r = r.n_;
        n->leaves = l.leafCount() + r.leafCount();
        return PlusTree(std::move(n));
    }

    bool isLeaf() const { return n_->value.has_value(); }
    const Leaf& value() const { return *n_->value; }
    PlusTree left() const { return PlusTree(n_->l); }
    PlusTree right() const { return PlusTree(n_->r); }
    std::size_t leafCount() const { return n_->leaves; }

    /// Bottom-up fold: `onLeaf(const Leaf&) -> R`, `onNode(R, R) -> R`.
    template <class OnLeaf, class OnNode>
    auto fold(OnLeaf&& onLeaf, OnNode&& onNode) const -> std::invoke_result_t<OnLeaf&, const Leaf&> {
        if (isLeaf())
            return onLeaf(value());
        auto l = left().fold(onLeaf, onNode);
        auto r = right().fold(onLeaf, onNode);
        return onNode(std::move(l), std::move(r));
    }

    /// Same shape, leaves replaced by f(leaf).
    template <class F>
    auto map(F&& f) const -> PlusTree<std::invoke_result_t<F&, const Leaf&>> {
        using Out = PlusTree<std::invoke_result_t<F&, const Leaf&>>;
        return fold([&](const Leaf& v) { return Out::leaf(f(v)); },
                    [](Out l, Out r) { return Out::node(l, r); });
    }

    /// Leaves left to right.
    std::vector<Leaf> leaves() const {
        std::vector<Leaf> out;
        out.reserve(leafCount());
        collect(out);
        return out;
    }

private:
    struct Node {
        std::optional<Leaf> value;
        std::shared_ptr<const Node> l, r;
        std::size_t leaves = 0;
    };

    explicit PlusTree(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

    void collect(std::vector<Leaf>& out) const {
        if (isLeaf()) {
            out.push_back(value());
            return;
        }
        left().collect(out);
        right().collect(out);
    }

    std::shared_ptr<const Node> n_;
};

/// Replaces every leaf by the tree f(leaf); the result's sum is the sum of
/// the inner sums, parenthesised as the outer tree.
template <class Leaf, class F>
auto graft(const PlusTree<Leaf>& t, F&& f) -> std::invoke_result_t<F&, const Leaf&> {
    using Out = std::invoke_result_t<F&, const Leaf&>;
    return t.fold([&](const Leaf& v) { return f(v); }, [](Out l, Out r) { return Out::node(l, r); });
}

} // namespace mav
