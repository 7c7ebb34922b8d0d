#include "shieldlab/intention/labeled_mdp.hpp"

#include <cctype>

namespace shieldlab::intention {

struct Formula::Node {
  enum class Op { kAtom, kAnd, kOr, kNot };
  Op op;
  std::string name;
  std::shared_ptr<const Node> left, right;
};

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(
                                    text[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::shared_ptr<const Formula::Node> parse_or() {
    auto left = parse_and();
    while (eat('|')) {
      auto node = std::make_shared<Formula::Node>();
      node->op = Formula::Node::Op::kOr;
      node->left = left;
      node->right = parse_and();
      left = node;
    }
    return left;
  }

  std::shared_ptr<const Formula::Node> parse_and() {
    auto left = parse_unary();
    while (eat('&')) {
      auto node = std::make_shared<Formula::Node>();
      node->op = Formula::Node::Op::kAnd;
      node->left = left;
      node->right = parse_unary();
      left = node;
    }
    return left;
  }

  std::shared_ptr<const Formula::Node> parse_unary() {
    if (eat('!')) {
      auto node = std::make_shared<Formula::Node>();
      node->op = Formula::Node::Op::kNot;
      node->left = parse_unary();
      return node;
    }
    if (eat('(')) {
      auto inner = parse_or();
      if (!eat(')')) throw ParseError("missing `)` in formula");
      return inner;
    }
    skip();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    if (start == pos) throw ParseError("expected proposition name in formula");
    auto node = std::make_shared<Formula::Node>();
    node->op = Formula::Node::Op::kAtom;
    node->name = text.substr(start, pos - start);
    return node;
  }
};

std::vector<std::uint8_t> eval_node(
    const Formula::Node& node,
    const std::map<std::string, std::vector<std::uint8_t>>& valuations,
    int state_count) {
  switch (node.op) {
    case Formula::Node::Op::kAtom: {
      const auto it = valuations.find(node.name);
      if (it == valuations.end())
        throw InvalidInput("unknown proposition `" + node.name + "`");
      return it->second;
    }
    case Formula::Node::Op::kNot: {
      auto v = eval_node(*node.left, valuations, state_count);
      for (auto& b : v) b = !b;
      return v;
    }
    case Formula::Node::Op::kAnd:
    case Formula::Node::Op::kOr: {
      auto l = eval_node(*node.left, valuations, state_count);
      const auto r = eval_node(*node.right, valuations, state_count);
      for (int s = 0; s < state_count; ++s)
        l[s] = node.op == Formula::Node::Op::kAnd ? (l[s] && r[s])
                                                  : (l[s] || r[s]);
      return l;
    }
  }
  return {};
}

}  // namespace

Formula Formula::parse(const std::string& text) {
  Parser parser{text};
  Formula f;
  f.root_ = parser.parse_or();
  parser.skip();
  if (parser.pos != text.size())
    throw ParseError("trailing characters in formula: " + text);
  f.text_ = text;
  return f;
}

std::vector<std::uint8_t> Formula::evaluate(
    const std::map<std::string, std::vector<std::uint8_t>>& valuations,
    int state_count) const {
  if (!root_) throw InvalidInput("empty formula");
  return eval_node(*root_, valuations, state_count);
}

LabeledMdp::LabeledMdp(mdp::Mdp base,
                       std::map<std::string, std::vector<int>> valuation)
    : base_(std::move(base)), valuation_(std::move(valuation)) {
  base_.validate();
  for (const auto& [name, states] : valuation_)
    for (int s : states)
      if (s < 0 || s >= base_.state_count())
        throw InvalidInput("valuation of `" + name + "` out of range");
}

void LabeledMdp::set_restriction(std::vector<ActionMask> masks) {
  if (static_cast<int>(masks.size()) != base_.state_count())
    throw InvalidInput("restriction size mismatch");
  for (int s = 0; s < base_.state_count(); ++s)
    if ((masks[s] & base_.enabled_actions(s)) == 0)
      throw InvalidInput("restriction empties state " + std::to_string(s));
  restriction_ = std::move(masks);
}

std::vector<int> LabeledMdp::states_of(const Formula& formula) const {
  std::map<std::string, std::vector<std::uint8_t>> valuations;
  for (const auto& [name, states] : valuation_) {
    std::vector<std::uint8_t> bits(base_.state_count(), 0);
    for (int s : states) bits[s] = 1;
    valuations[name] = std::move(bits);
  }
  const std::vector<std::uint8_t> sat =
      formula.evaluate(valuations, base_.state_count());
  std::vector<int> out;
  for (int s = 0; s < base_.state_count(); ++s)
    if (sat[s]) out.push_back(s);
  return out;
}

}  // namespace shieldlab::intention
