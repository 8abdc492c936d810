//! Random (order, x) samples checked against values computed beforehand at
//! 30 significant digits.

use abscat::specfun::{bessel_j, hankel, HankelKind, Order};
use num_complex::Complex64;

// (imaginary order?, mu, x, H1, J)
#[rustfmt::skip]
const TABLE: &[(bool, f64, f64, (f64, f64), (f64, f64))] = &[
    (false, 1.6529721859241537, 0.005678660036556126, (4.144311154849131e-05, -4646.610513844581), (4.144311154849131e-05, 0.0)),
    (true, 3.272125641547276, 0.002302403481718782, (-3.9888265985405837, 75.18564783834611), (-1.9944817541338806, 37.5915336090682)),
    (false, 2.7026159213181113, 0.06736659310492216, (2.5032473710682853e-05, -4706.721300541655), (2.5032473710682853e-05, 0.0)),
    (true, 0.33709467763479867, 0.34449162324625326, (1.4550417368416124, -1.2815200926988406), (0.9798233069827432, -0.4185460463882406)),
    (false, 0.23560350928782514, 0.14730870726971745, (0.5921093787817441, -1.6073913080842248), (0.5921093787817441, 0.0)),
    (true, 0.39578434669436374, 0.002841613888396719, (-1.2817255789188615, -2.1708366055778865), (-0.8256901459151359, -0.772379382675735)),
    (false, 2.151369986255444, 13.622619407786834, (-0.21339546325270906, -0.041850734099085005), (-0.21339546325270906, 0.0)),
    (true, 0.6628197076907457, 0.013067569634184732, (-2.4382713530420994, -0.29374096488393736), (-1.3710912047271757, -0.12856424945480485)),
    (false, 3.155794450907667, 54.77024861339711, (0.044164317143118824, -0.09844703722086108), (0.044164317143118824, 0.0)),
    (true, 2.906659595656618, 0.09625036237187888, (-42.33257826942377, 15.19442132703483), (-21.168579301453157, 7.596388654563588)),
    (false, 4.8824627726849545, 0.0017096743775743054, (1.0651135245746889e-17, -6120900435642465.0), (1.0651135245746889e-17, 0.0)),
    (true, 4.299418872290963, 0.028057335908759355, (-202.43857960714658, -260.35199548284277), (-101.21942759996365, -130.17582052438465)),
    (false, 0.7640626626193159, 0.0038811568148236606, (0.009181621884343145, -45.38265400201025), (0.009181621884343145, 0.0)),
    (true, 1.5769850293045753, 12.040147174050462, (0.3966719627260193, -2.696272190510105), (0.1997349256694118, -1.3386271433152608)),
    (false, 0.9445955806234906, 0.8090974237056391, (0.3993888020726372, -0.930482666379394), (0.3993888020726372, 0.0)),
    (true, 3.212621671184611, 0.07277592156349946, (56.091349124354274, 40.51572885639737), (28.04683505069615, 20.257026187740728)),
    (false, 2.761335105262311, 0.002060368373474546, (1.259247787349264e-09, -91541907.09215194), (1.259247787349264e-09, 0.0)),
    (true, 0.34502579133285166, 0.010710100943194497, (-0.08199333071120085, -3.317125672342337), (-0.05486433545968153, -1.0975317850013235)),
    (false, 3.4179798672498403, 0.1373920261919288, (1.0177806543628963e-05, -9158.211828224827), (1.0177806543628963e-05, 0.0)),
    (true, 1.6050284933651182, 0.8468555099249827, (2.7895284600688734, -6.9622581415962665), (1.4037724270801788, -3.4586459184945815)),
    (false, 2.293262663035338, 0.031538060671795, (2.763080911465189e-05, -5024.044318194739), (2.763080911465189e-05, 0.0)),
    (true, 3.982178433536331, 3.1258790416958706, (184.82171700897683, 8.661446260971749), (92.41119933064205, 4.330707158080349)),
    (false, 1.2582777280746569, 0.7449352944495307, (0.2382737804182462, -1.25881974372537), (0.2382737804182462, 0.0)),
    (true, 2.6497226938666847, 23.751305066882306, (-7.133729192634259, -7.675863229693937), (-3.567729698953293, -3.837000767973542)),
    (false, 3.6607541827241272, 0.027522559827606312, (1.0521665972141357e-08, -8264342.630524043), (1.0521665972141357e-08, 0.0)),
    (true, 4.901865495088281, 0.0038933988052716204, (-759.3779136147751, -237.69088206181667), (-379.6890346896564, -118.84541665318434)),
    (false, 2.1197079678368747, 6.1052668066509685, (-0.23026050216153793, 0.23968278317338362), (-0.23026050216153793, 0.0)),
    (true, 0.8023234465694986, 0.2784937815909077, (0.8543620360470855, -3.2117604818921803), (0.46153213060300136, -1.4767458210669113)),
    (false, 0.2440759223848164, 2.1932052796130184, (0.2958429489037776, 0.4451183990916897), (0.2958429489037776, 0.0)),
    (true, 3.8346257877534247, 0.7330434227557769, (154.6989490886299, 62.52738159136594), (77.3499280519647, 31.26350749355947)),
    (false, 4.383615168562897, 0.03704567942528549, (5.86481664189404e-10, -123816814.89395723), (5.86481664189404e-10, 0.0)),
    (true, 3.4917120630546132, 0.9372369143170433, (-47.46218628093266, 89.4302331131238), (-23.73150174988262, 44.71434663763877)),
    (false, 2.9204812611983364, 0.1909970486809824, (0.00019271894207701742, -566.9289594600401), (0.00019271894207701742, 0.0)),
    (true, 4.2078405135370796, 52.89388608128606, (-8.326142935316268, 80.87094428427865), (-4.163079024420565, 40.43539874410638)),
    (false, 2.39678677022724, 2.0929604773740955, (0.2684027979604878, -0.7286464674904591), (0.2684027979604878, 0.0)),
    (true, 0.3503136666062376, 3.217067005371438, (-0.5516943532105666, 0.5301426057143352), (-0.36761889419961896, 0.17688461540384862)),
    (false, 3.2532878299119603, 92.35910108070496, (0.010403387077428657, -0.08239431493823784), (0.010403387077428657, 0.0)),
    (true, 4.118527693718089, 0.026483639067937246, (33.87732818379685, -251.34324502490506), (16.938704797798085, -125.67132050655475)),
    (false, 1.9596676401112187, 2.2042638558652285, (0.4065338604411568, -0.5009840899231267), (0.4065338604411568, 0.0)),
    (true, 0.16168649387516343, 0.20345877788693656, (1.2148609486568487, -1.384986563859943), (0.9729371786038716, -0.2758020754327149)),
    (false, 0.8818394755873956, 0.0038501617258420314, (0.00421705699401301, -85.6035173639377), (0.00421705699401301, 0.0)),
    (true, 0.34182437568998647, 6.936892148733847, (0.5108705719586054, -0.08132202704730815), (0.3427130869623778, -0.02676785137699923)),
    (false, 0.690234098992487, 0.017301118011772393, (0.0415465638158188, -11.124995251748281), (0.0415465638158188, 0.0)),
    (true, 1.985201030509474, 22.75673072470454, (-3.75038393906638, 0.4208580037753806), (-1.8788604346253603, 0.2100173365966975)),
    (false, 0.44887744094068616, 0.1761720486918371, (0.3773903129277353, -1.7815890928067064), (0.3773903129277353, 0.0)),
    (true, 2.769727550262985, 26.116750022457712, (12.05648449022992, 0.5696384556440294), (6.029245104215651, 0.2847718452612186)),
    (false, 4.105435197286919, 20.88922599764613, (0.014771563648264006, 0.1756487534273503), (0.014771563648264006, 0.0)),
    (true, 1.428184269343791, 0.11925664464623756, (-4.791720571140598, 4.048119998760269), (-2.422830266699638, 2.0012753402258805)),
    (false, 1.8259172683915428, 26.361136867469206, (-0.111154753961133, -0.10884947134031422), (-0.111154753961133, 0.0)),
    (true, 4.790769459621757, 0.005683351658801853, (667.6861873812858, -105.66129133852981), (333.8431907706566, -52.83063030635969)),
    (false, 0.9222777560273332, 0.014447221593167416, (0.010928881697090956, -31.601847295954446), (0.010928881697090956, 0.0)),
    (true, 1.2050136142202625, 0.2659583633335369, (-2.5881789303587532, -4.0838373793633975), (-1.3234573197210806, -1.9955797211033195)),
    (false, 2.966161343474665, 0.020593639050527447, (2.2160672464069814e-07, -484266.2824252909), (2.2160672464069814e-07, 0.0)),
    (true, 0.07026333675606644, 0.12437483156989824, (1.0969285892328433, -1.5538807006769553), (0.9882921438501937, -0.15389158193816838)),
    (false, 1.8778051858288907, 0.6787441797597062, (0.0704480444334238, -2.6508876921299334), (0.0704480444334238, 0.0)),
    (true, 4.767834731349222, 2.8344466406907167, (107.90074612214335, -597.2346884640377), (53.95038992168954, -298.6172509078648)),
    (false, 2.6016825937003527, 1.2245139780669994, (0.06744018755435632, -2.1214636893229697), (0.06744018755435632, 0.0)),
    (true, 3.3971904081250317, 0.0018619347873267468, (89.5185672033057, -8.56806995263495), (44.7603207404114, -4.283935708894957)),
    (false, 4.502688399786863, 7.940492749525642, (0.06334009512095189, 0.30361930145729205), (0.06334009512095189, 0.0)),
    (true, 4.378840261465659, 9.758107674888318, (-33.84426040504885, 234.43235569101944), (-16.922148152709152, 117.21605350820585)),
    (false, 1.9922755891117798, 0.09883122117237823, (0.0012575449850253855, -127.261961692371), (0.0012575449850253855, 0.0)),
    (true, 0.5625086138661052, 1.4840475914864473, (1.3070007610030279, 0.7700482462607823), (0.7651281875948456, 0.31925614529066143)),
    (false, 0.35812671701250354, 0.00217139122892661, (0.09746364887538637, -9.072903823520088), (0.09746364887538637, 0.0)),
    (true, 1.0833777679585141, 0.006479118735756441, (3.7996715473425113, 1.5469397941367173), (1.9630159818025688, 0.7477476795181273)),
    (false, 1.7332655785500999, 0.0018317998514001612, (3.4167825722616183e-06, -53748.70875257451), (3.4167825722616183e-06, 0.0)),
    (true, 0.05115474541171532, 0.005705906639223257, (1.043204113349189, -3.6044546847804355), (0.9657677079162101, -0.2675564741010849)),
    (false, 0.5522486217118527, 0.06577329669826933, (0.17053156208851503, -3.3976893344180437), (0.17053156208851503, 0.0)),
    (true, 0.1762293889974212, 23.53216510887237, (-0.15876065598942846, -0.14779776744780948), (-0.12501234627901434, -0.03141789002603121)),
    (false, 3.0896414895529696, 0.005530347570678278, (1.8547894809804832e-09, -55545411.91716281), (1.8547894809804832e-09, 0.0)),
    (true, 1.2986758949575326, 0.054569218008115254, (-1.4386557999545058, 5.268492180106509), (-0.7314909984513758, 2.5897036851230353)),
    (false, 1.8526090256649983, 0.004113496705453819, (6.005001894660648e-06, -28612.42806807121), (6.005001894660648e-06, 0.0)),
    (true, 4.252237786098844, 92.3663130750415, (-61.43385758391817, -24.218814025223313), (-30.71697729010152, -12.109387893390783)),
    (false, 2.356647822841672, 0.2625265806934936, (0.0029184280062229846, -46.64167105671181), (0.0029184280062229846, 0.0)),
    (true, 0.4751290747030197, 0.0032429338037145675, (-1.8408842967086743, -0.9792911154851838), (-1.127333159838202, -0.379586207580209)),
    (false, 1.7460473993028591, 0.021075818922741983, (0.00022010967689616614, -828.3276083462105), (0.00022010967689616614, 0.0)),
    (true, 4.152834121701725, 0.006414946704988771, (86.78046118472015, -252.03042451274348), (43.39032421120556, -126.01494036570594)),
    (false, 0.16432381917397837, 56.875845311834055, (0.07965641032270825, -0.06962484476322468), (0.07965641032270825, 0.0)),
    (true, 2.6648741054585177, 0.005407701295098083, (-23.49493386899726, 21.930337999135933), (-11.750183705392903, 10.96263314633638)),
    (false, 2.738703508116466, 0.0013652508547565296, (4.896002243173931e-10, -237390624.7238005), (4.896002243173931e-10, 0.0)),
    (true, 2.664141732644617, 78.0739610357956, (-1.5957829976800495, 5.710505564176905), (-0.7980764477834352, 2.8545909427456535)),
];

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn hankel_and_bessel_match_reference_table() {
    let mut worst = 0.0f64;
    for &(imag, mu, x, h, j) in TABLE {
        let order = if imag { Order::Imaginary(mu) } else { Order::Real(mu) };
        let h_ref = Complex64::new(h.0, h.1);
        let j_ref = Complex64::new(j.0, j.1);
        let h_got = hankel(HankelKind::First, order, x).unwrap();
        let j_got = bessel_j(order, x).unwrap();
        let eh = rel(h_got, h_ref);
        // J can sit near a zero; measure against the Hankel scale there
        let ej = (j_got - j_ref).norm() / j_ref.norm().max(h_ref.norm());
        worst = worst.max(eh).max(ej);
        assert!(eh < 1e-10, "H1 {order:?} x={x}: {h_got} vs {h_ref} ({eh:e})");
        assert!(ej < 1e-10, "J {order:?} x={x}: {j_got} vs {j_ref} ({ej:e})");
    }
    println!("worst relative deviation {worst:e}");
}
