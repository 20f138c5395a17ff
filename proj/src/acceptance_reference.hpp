#pragma once

// Frozen reference data for the acceptance suite. The contents were computed
// once with 50-digit arbitrary-precision arithmetic, independent of the
// closed forms in src/, and must not be regenerated from library output.
// tests/reference_values.hpp carries the same table for the unit tests; both
// copies come from the same generation run and are hand-edit-forbidden.

namespace akde::accref {

inline constexpr double kPluginMu[3] = {-0.5, 1.0, 2.0};
inline constexpr double kPluginSigma[3] = {0.5, 1.0, 1.8};
inline constexpr unsigned kPluginN[3] = {60, 300, 4000};

// cell order: gamma improper, gamma proper, lognormal improper, lognormal
// proper, birnbaum-saunders improper, birnbaum-saunders proper, inverse
// gaussian improper, reciprocal inverse gaussian improper, reciprocal
// inverse gaussian proper; index = (mu_i*3 + S_i)*3 + n_i
inline constexpr double kPluginRef[9][27] = {
  {0.15154062502858082, 0.10983356324172258, 0.065425541525930470,
   0.18598940275317712, 0.13480133677506317, 0.080298318625226767,
   0.097079741230467262, 0.070361422198935775, 0.041912818031485733,
   0.32081150570300070, 0.23251765520735595, 0.13850587249728804,
   0.39373956871825741, 0.28537443219221949, 0.16999154186357491,
   0.20551781379765335, 0.14895513196403845, 0.088729436468939307,
   0.52892875333787271, 0.38335680395368616, 0.22835757810315867,
   0.64916680206208578, 0.47050289646928368, 0.28026867090958726,
   0.33884159111597936, 0.24558549444905475, 0.14629010924357591},
  {0.16078335287369784, 0.11653250442077096, 0.069415959767438501,
   0.22179675448160609, 0.16075377711798287, 0.095757641014850590,
   0.13302316055808557, 0.096412481570633350, 0.057430885700531602,
   0.34037836070465986, 0.24669931379468871, 0.14695358798085206,
   0.46954373292219742, 0.34031574882931994, 0.20271892761922924,
   0.28161003311133763, 0.20410522508669999, 0.12158118598210602,
   0.56118904337981337, 0.40673840612042882, 0.24228550630973349,
   0.77414673999276692, 0.56108581384914202, 0.33422700793934293,
   0.46429645163322975, 0.33651262606147969, 0.20045348744564645},
  {0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447,
   0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447,
   0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447},
  {0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447,
   0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447,
   0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447},
  {0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447,
   0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447,
   0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447},
  {0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447,
   0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447,
   0.23248084266219318, 0.16849738695621162, 0.10037034638539970,
   0.45795065684980330, 0.33191332305258019, 0.19771377946278840,
   0.79593955942880420, 0.57688080619058186, 0.34363575237807447},
  {0.24261514457414799, 0.17584252288756646, 0.10474568923786494,
   0.37403214976712149, 0.27109089571285976, 0.16148313986435341,
   0.64935393068382200, 0.47063852348881013, 0.28034946107004610,
   0.11460327948525318, 0.083062126361682746, 0.049478360139771864,
   0.17668027719980610, 0.12805427188735749, 0.076279234103519751,
   0.30673307774594481, 0.22231389692753032, 0.13242770848845898,
   0.069510402711421922, 0.050379726299285556, 0.030010142417075094,
   0.10716200508820934, 0.077668842006859864, 0.046265694183182241,
   0.18604301600093439, 0.13484019456674135, 0.080321465393737332},
  {0.16078335287369784, 0.11653250442077096, 0.069415959767438501,
   0.22179675448160609, 0.16075377711798287, 0.095757641014850590,
   0.13302316055808557, 0.096412481570633350, 0.057430885700531602,
   0.34037836070465986, 0.24669931379468871, 0.14695358798085206,
   0.46954373292219742, 0.34031574882931994, 0.20271892761922924,
   0.28161003311133763, 0.20410522508669999, 0.12158118598210602,
   0.56118904337981337, 0.40673840612042882, 0.24228550630973349,
   0.77414673999276692, 0.56108581384914202, 0.33422700793934293,
   0.46429645163322975, 0.33651262606147969, 0.20045348744564645},
  {0.15154062502858082, 0.10983356324172258, 0.065425541525930470,
   0.18598940275317712, 0.13480133677506317, 0.080298318625226767,
   0.097079741230467262, 0.070361422198935775, 0.041912818031485733,
   0.32081150570300070, 0.23251765520735595, 0.13850587249728804,
   0.39373956871825741, 0.28537443219221949, 0.16999154186357491,
   0.20551781379765335, 0.14895513196403845, 0.088729436468939307,
   0.52892875333787271, 0.38335680395368616, 0.22835757810315867,
   0.64916680206208578, 0.47050289646928368, 0.28026867090958726,
   0.33884159111597936, 0.24558549444905475, 0.14629010924357591},
};

inline constexpr double kSigmaGammaImproper_1_1_300 = 0.28537443219221949;
inline constexpr double kSigmaGammaProper_1_1_300 = 0.34031574882931994;

}  // namespace akde::accref
