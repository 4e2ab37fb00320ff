#include "rmpf/toy_example.hpp"

namespace rmpf::toy {

const Fixture& fixture() {
  static const Fixture kFixture{
      .p = 104729,
      .base = {51141, 16202, 66646, 4601, 73510, 9641, 41977, 29822, 28262,
               61281, 20522, 40337, 25689, 35123, 17039},
      .x = {27536, 23259, 3230, 97577, 61064, 52197, 61356, 19870, 66794,
            93047, 74112, 73769, 88730, 84531, 46584},
      .y = {7991, 99112, 88031, 62951, 45825, 26429, 53671, 81823, 10939,
            92791, 39779, 100242, 67646, 52695, 65391},
      .lambda_a = 35413,
      .omega_a = 22911,
      .lambda_b = 77591,
      .omega_b = 9608,
      .a1 = {975132368, 823670967, 114383990, 3455494301, 2162459432,
             1848452361, 2172800028, 703656310, 2365375922, 3295073411,
             2624528256, 2612381597, 3142195490, 2993496303, 1649679192},
      .b1 = {183081801, 2270755032, 2016878241, 1442270361, 1049896575,
             605514819, 1229656281, 1874646753, 250623429, 2125934601,
             911376669, 2296644462, 1549837506, 1207295145, 1498173201},
      .a2 = {2136545776, 1804689069, 250618930, 7571097007, 4738016824,
             4050017427, 4760673396, 1541733170, 5182613254, 7219609777,
             5750424192, 5723810479, 6884649430, 6558844821, 3614499144},
      .b2 = {76777528, 952268096, 845801848, 604833208, 440286600, 253929832,
             515670968, 786155384, 105101912, 891535928, 382196632, 963125136,
             649942768, 506293560, 628276728},
      .token_a = {90444, 78140, 22111, 91141, 86834, 31963, 22517, 82376,
                  27232, 76737, 17315, 37169, 95799, 99846, 20180},
      .token_b = {25880, 18100, 3262, 66621, 6366, 37099, 77233, 4706, 92229,
                  41946, 98748, 61670, 61540, 92962, 89447},
      .key_a = {76099, 14814, 8343, 58724, 39308, 74495, 26031, 18945, 38075,
                90635, 51524, 65266, 23296, 83580, 22846},
      .key_b = {76099, 14814, 8343, 58724, 39308, 74495, 26031, 18945, 38075,
                90635, 51524, 65266, 23296, 83580, 22846},
  };
  return kFixture;
}

PublicParams params(const Fixture& f) {
  const Modulus mod(f.p);
  const Dims dims = Dims::checked(kRows, kCols);
  return PublicParams(BaseMatrix(dims, mod, {f.base.begin(), f.base.end()}),
                      ExpMatrix::reduce(dims, mod, f.x),
                      ExpMatrix::reduce(dims, mod, f.y));
}

namespace {

void compare(std::vector<CellCheck>& out, const std::string& figure,
             const Grid& expected, std::span<const std::uint64_t> actual,
             std::uint64_t reduce_mod = 0) {
  for (std::size_t idx = 0; idx < expected.size(); ++idx) {
    const std::uint64_t want =
        reduce_mod == 0 ? expected[idx] : expected[idx] % reduce_mod;
    out.push_back(CellCheck{figure, idx / kCols + 1, idx % kCols + 1, want,
                            actual[idx]});
  }
}

}  // namespace

std::vector<CellCheck> verify(const Fixture& f) {
  const PublicParams pp = params(f);
  const std::uint64_t q = pp.modulus().q();
  const auto alice = PrivateKey::from_scalars(pp, f.lambda_a, f.omega_a);
  const auto bob = PrivateKey::from_scalars(pp, f.lambda_b, f.omega_b);
  const Token ta = make_token(pp, alice);
  const Token tb = make_token(pp, bob);
  const SharedKey ka = derive_key(pp, alice, tb);
  const SharedKey kb = derive_key(pp, bob, ta);

  std::vector<CellCheck> out;
  compare(out, "Figure 3 A1", f.a1, alice.a().entries(), q);
  compare(out, "Figure 3 B1", f.b1, alice.b().entries(), q);
  compare(out, "Figure 4 TokenA", f.token_a, ta.matrix.entries());
  compare(out, "Figure 5 A2", f.a2, bob.a().entries(), q);
  compare(out, "Figure 5 B2", f.b2, bob.b().entries(), q);
  compare(out, "Figure 6 TokenB", f.token_b, tb.matrix.entries());
  compare(out, "Figure 7 KeyA", f.key_a, ka.matrix.entries());
  compare(out, "Figure 7 KeyB", f.key_b, kb.matrix.entries());
  return out;
}

}  // namespace rmpf::toy
