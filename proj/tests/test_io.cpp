#include <gtest/gtest.h>

#include <string>

#include "gapforge/io.hpp"
#include "gapforge/pipeline.hpp"

namespace gapforge {
namespace {

constexpr const char* kNot = "g1 = INPUT\ng2 = NOT g1\nOUTPUT g2\n";

ErrorKind error_kind(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::Io;
}

TEST(IoQuadsys, RoundTripIsByteStable) {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto sys = circuit_to_quadratic(parse_circuit(kNot), make_field_of_order(q));
    const auto text = io::write_quadsys(sys);
    const auto back = io::read_quadsys(text);
    EXPECT_EQ(back, sys);
    EXPECT_EQ(io::write_quadsys(back), text);
  }
}

TEST(IoQuadsys, Layout) {
  const auto sys = circuit_to_quadratic(parse_circuit(kNot), make_field(2, 1));
  const auto text = io::write_quadsys(sys);
  EXPECT_EQ(text.rfind("QUADSYS\nFIELD p=2 m=1 modulus=0,1\nn=3 m=4 distinguished=3\nMATRIX r=3 c=3\n", 0), 0u);
}

TEST(IoCode, RoundTrip) {
  for (const auto& code : {hadamard(make_field(3, 1), 2), balanced_code(make_field(2, 1), 2, Rational(1, 2)),
                           LinearCode{Matrix::identity(make_field(2, 2), 2), std::nullopt, false, std::nullopt}}) {
    const auto text = io::write_code(code);
    const auto back = io::read_code(text);
    EXPECT_EQ(back.gen, code.gen);
    EXPECT_EQ(back.d, code.d);
    EXPECT_EQ(back.d_exact, code.d_exact);
    EXPECT_EQ(back.eps, code.eps);
    EXPECT_EQ(io::write_code(back), text);
  }
}

TEST(IoInstances, MdpAndNcpRoundTrip) {
  PipelineConfig cfg;
  cfg.t = 2;
  const auto r = run_end_to_end(cfg, kNot);
  for (const auto* inst : {&r.mdp, &r.amplified}) {
    const auto text = io::write_mdp(*inst);
    const auto back = io::read_mdp(text);
    EXPECT_EQ(back.basis, inst->basis);
    EXPECT_EQ(back.length, inst->length);
    EXPECT_EQ(back.distinguished, inst->distinguished);
    EXPECT_EQ(back.meta, inst->meta);
    EXPECT_EQ(io::write_mdp(back), text);
  }
  const auto text = io::write_ncp(r.ncp);
  const auto back = io::read_ncp(text);
  EXPECT_EQ(back.offset, r.ncp.offset);
  EXPECT_EQ(back.hom_basis, r.ncp.hom_basis);
  EXPECT_EQ(back.distinguished, r.ncp.distinguished);
  EXPECT_EQ(back.meta, r.ncp.meta);
  EXPECT_EQ(io::write_ncp(back), text);
}

TEST(IoInstances, DistinguishedIsOneBasedInText) {
  MDPInstance inst;
  inst.field = make_field(2, 1);
  inst.length = 2;
  inst.basis = {Vector(inst.field, {1, 1})};
  inst.distinguished = 1;
  const auto text = io::write_mdp(inst);
  EXPECT_NE(text.find("L=2 dim=1 distinguished=2 yes=0 no=0 t=1\n"), std::string::npos);
  inst.distinguished.reset();
  EXPECT_NE(io::write_mdp(inst).find("distinguished=none"), std::string::npos);
  EXPECT_FALSE(io::read_mdp(io::write_mdp(inst)).distinguished);
}

TEST(IoParse, CommentsAndBlankLines) {
  const std::string text =
      "# comment\nMDP\n\nFIELD p=3 m=1 modulus=0,1\nL=2 dim=1 distinguished=none yes=1 no=2 t=1\n"
      "MATRIX r=1 c=2\n  1 2  \n";
  const auto inst = io::read_mdp(text);
  EXPECT_EQ(inst.basis.front(), Vector(make_field(3, 1), {1, 2}));
  EXPECT_EQ(io::document_kind(text), "MDP");
}

TEST(IoParse, Errors) {
  const std::string header = "MDP\nFIELD p=2 m=1 modulus=0,1\n";
  EXPECT_EQ(error_kind([] { io::read_mdp("CODE\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(error_kind([&] { io::read_mdp(header); }), ErrorKind::ParseError);
  EXPECT_EQ(error_kind([&] { io::read_mdp(header + "L=2 dim=1 distinguished=none yes=1 no=2 t=1\nMATRIX r=1 c=2\n1 2\n"); }),
            ErrorKind::ParseError);
  EXPECT_EQ(error_kind([&] { io::read_mdp(header + "L=2 dim=1 distinguished=3 yes=1 no=2 t=1\nMATRIX r=1 c=2\n1 0\n"); }),
            ErrorKind::ParseError);
  EXPECT_EQ(error_kind([&] { io::read_mdp(header + "L=2 dim=1 distinguished=none no=2 t=1\nMATRIX r=1 c=2\n1 0\n"); }),
            ErrorKind::ParseError);
  EXPECT_EQ(error_kind([&] { io::read_mdp(header + "L=2 dim=1 distinguished=none yes=x no=2 t=1\n"); }),
            ErrorKind::ParseError);
  EXPECT_EQ(error_kind([] { io::read_mdp("MDP\nFIELD p=2 m=2 modulus=1,0,1\n"); }), ErrorKind::ParseError);
  try {
    io::read_mdp(header + "L=2 dim=1 distinguished=none yes=1 no=2 t=1\nMATRIX r=1 c=2\n1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
}

TEST(IoFiles, MissingFile) {
  EXPECT_EQ(error_kind([] { io::read_file("/nonexistent/gapforge/file.txt"); }), ErrorKind::Io);
}

}  // namespace
}  // namespace gapforge
