"""Source tables for the bundled oncology demo fixtures.

Everything the fixture builder needs to reconstruct a full desk-scale
review session: the 92-paper pool with per-paper relevancy targets and
curation status, the per-paper extraction outputs and manual ground
truth for the 55 included papers, the curated cluster plan with the
expected per-year trend matrix, and the query/prompt sensitivity tables.

These tables are the *expected values*; the test suite recomputes each
quantity through the pipeline and checks agreement. Building fixtures
and asserting against the same hand-checked tables is intentional: the
tables were transcribed and cross-checked by hand (the determinants sum
to the pooled TP=108 / FP=51 / FN=12), never derived by running the code
under test.
"""

# --- paper pool -------------------------------------------------------
# (eid, title, year, citations, relevancy) in original result order.
# relevancy is 1 when the level-2 phrase "image processing" should match
# the paper's text, 0 otherwise.

POOL_ROWS = [
    ("2-s2.0-84918834255", "Nevus and melanoma Paraconsistent classification", 2014, 6, 0),
    ("2-s2.0-84902660528", "A computer-aided diagnostic tool for melanoma", 2014, 3, 1),
    ("2-s2.0-84902106481", "Cancer therapy prognosis using quantitative ultrasound spectroscopy and a kernel-based metric", 2014, 8, 0),
    ("2-s2.0-84891153909", "Detection of pigment network in dermoscopy images using supervised machine learning and structural analysis", 2014, 67, 0),
    ("2-s2.0-84921642433", "Hybrid genetic algorithm - Artificial neural network classifier for skin cancer detection", 2014, 27, 1),
    ("2-s2.0-84948392681", "Implementing DEWA Framework for Early Diagnosis of Melanoma", 2015, 6, 0),
    ("2-s2.0-84944318438", "Detection of melanoma through image recognition and artificial neural networks", 2015, 9, 1),
    ("2-s2.0-84983425726", "Design of a decision support system, trained on GPU, for assisting melanoma diagnosis in dermatoscopy images", 2015, 4, 0),
    ("2-s2.0-84961903068", "Computerized Diagnosis of Melanocytic Lesions Based on the ABCD Method", 2015, 10, 0),
    ("2-s2.0-84988890309", "Classification of melanoma lesions using sparse coded features and random forests", 2016, 17, 1),
    ("2-s2.0-84981719831", "Slide-specific models for segmentation of differently stained digital histopathology whole slide images", 2016, 21, 0),
    ("2-s2.0-84960402804", "Melanoma image processing and analysis for decision support systems", 2016, 0, 1),
    ("2-s2.0-84954436777", "Validation of a Skin-Lesion Image-Matching Algorithm Based on Computer Vision Technology", 2016, 13, 0),
    ("2-s2.0-84964265510", "Characterization of melanomas using a variety of features", 2016, 0, 1),
    ("2-s2.0-84962792167", "Supervised classification of dermoscopic images using optimized fuzzy clustering based Multi-Layer Feed-forward Neural Network", 2016, 9, 0),
    ("2-s2.0-84994285804", "Melanoma detection and classification using SVM based decision support system", 2016, 14, 0),
    ("2-s2.0-84963804529", "Machine Learning Methods for Binary and Multiclass Classification of Melanoma Thickness From Dermoscopic Images", 2016, 48, 0),
    ("2-s2.0-84976426664", "ATLAAS: An automatic decision tree-based learning algorithm for advanced image segmentation in positron emission tomography", 2016, 33, 0),
    ("2-s2.0-85038823793", "I3DermoscopyApp: Hacking Melanoma thanks to IoT technologies", 2017, 4, 1),
    ("2-s2.0-85028633382", "EIMES 3D: An innovative medical images analysis tool to support diagnostic and surgical intervention", 2017, 23, 0),
    ("2-s2.0-85021253325", "Intelligent system supporting diagnosis of malignant melanoma", 2017, 12, 0),
    ("2-s2.0-85015305877", "Dermoscopic feature analysis for melanoma recognition and prevention", 2017, 8, 0),
    ("2-s2.0-85018542177", "High-level features for automatic skin lesions neural network based classification", 2017, 19, 0),
    ("2-s2.0-85020287797", "An efficient machine learning approach for the detection of melanoma using dermoscopic images", 2017, 64, 0),
    ("2-s2.0-85021849026", "The Rise of Radiomics and Implications for Oncologic Management", 2017, 91, 0),
    ("2-s2.0-85019985302", "Adaptable pattern recognition system for discriminating Melanocytic Nevi from Malignant Melanomas using plain photography images from different image databases", 2017, 23, 0),
    ("2-s2.0-85039989899", "Detection of skin cancer 'Melanoma' through computer vision", 2017, 8, 1),
    ("2-s2.0-85039912655", "A smart dermoscope design using artificial neural network", 2017, 5, 1),
    ("2-s2.0-85036544923", "Miaquant, a novel system for automatic segmentation, measurement, and localization comparison of different biomarkers from serialized histological slices", 2017, 10, 0),
    ("2-s2.0-85042474953", "Dermoscopic image analysis using pattern recognition techniques from region of interest (ROI) for detection of melanoma", 2017, 2, 1),
    ("2-s2.0-85103213412", "Cosmetic oncology: Innocent mole or malignant melanoma? Subjective assessments, objective semiology and aided diagnosis", 2018, 0, 1),
    ("2-s2.0-85042927927", "Simulation and Synthesis in Medical Imaging", 2018, 60, 0),
    ("2-s2.0-85050502789", "Feature selection using sequential backward method in melanoma recognition", 2018, 12, 1),
    ("2-s2.0-85042181700", "Machine learning-based diagnosis of melanoma using macro images", 2018, 24, 0),
    ("2-s2.0-85074209854", "Computer aided early detection and classification of malignant melanoma", 2018, 0, 1),
    ("2-s2.0-85048760650", "Dermoscopic assisted diagnosis in melanoma: Reviewing results, optimizing methodologies and quantifying empirical guidelines", 2018, 25, 1),
    ("2-s2.0-85060645376", "Estimation of Illumination Map from Dermoscopy Images for Extracting Differential Structures Using Gabor Local Mesh Patterns", 2018, 0, 0),
    ("2-s2.0-85059759729", "A computer aided diagnosis system for skin cancer detection", 2019, 6, 0),
    ("2-s2.0-85056306068", "The Continuing Evolution of Molecular Functional Imaging in Clinical Oncology: The Road to Precision Medicine and Radiogenomics (Part I)", 2019, 15, 1),
    ("2-s2.0-85055963110", "The Continuing Evolution of Molecular Functional Imaging in Clinical Oncology: The Road to Precision Medicine and Radiogenomics (Part II)", 2019, 6, 1),
    ("2-s2.0-85054192769", "Towards a modular decision support system for radiomics: A case study on rectal cancer", 2019, 29, 0),
    ("2-s2.0-85077975055", "Radiomics to predict prostate cancer aggressiveness: A preliminary study", 2019, 4, 1),
    ("2-s2.0-85073726145", "Basis and perspectives of artificial intelligence in radiation therapy", 2019, 1, 0),
    ("2-s2.0-85099879408", "Melanoma detection using an objective system based on multiple connected neural networks", 2020, 15, 1),
    ("2-s2.0-85091193990", "Skin cancer classification computer system development with deep learning", 2020, 0, 1),
    ("2-s2.0-85086354606", "Methods of artificial intelligence and their application in imaging diagnostics", 2020, 2, 1),
    ("2-s2.0-85081629940", "Automatic classification of melanocytic skin tumors based on hyperparameters optimized by cross-validation using support vector machines", 2020, 0, 1),
    ("2-s2.0-85075297765", "Clinical implementation of AI technologies will require interpretable AI models", 2020, 50, 0),
    ("2-s2.0-85086182046", "Utilizing computer vision, clustering and neural networks for melanoma categorization", 2020, 1, 1),
    ("2-s2.0-85082062276", "Artificial intelligence in oncology", 2020, 82, 0),
    ("2-s2.0-85084500870", "Artificial intelligence radiogenomics for advancing precision and effectiveness in oncologic care (Review)", 2020, 29, 0),
    ("2-s2.0-85093943094", "A preliminary study on machine learning-based evaluation of static and dynamic fet-pet for the detection of pseudoprogression in patients with idh-wildtype glioblastoma", 2020, 18, 0),
    ("2-s2.0-85123369429", "U-Net-based medical image segmentation algorithm", 2021, 0, 1),
    ("2-s2.0-85123014841", "Skin Pathology Detection Using Artificial Intelligence", 2021, 5, 1),
    ("2-s2.0-85107175102", "Developing a Recognition System for Diagnosing Melanoma Skin Lesions Using Artificial Intelligence Algorithms", 2021, 14, 0),
    ("2-s2.0-85138248078", "Microfluidic Co-Culture Models for Dissecting the Immune Response in in vitro Tumor Microenvironments", 2021, 8, 1),
    ("2-s2.0-85096782074", "Quantitative Whole Slide Assessment of Tumor-Infiltrating CD8-Positive Lymphocytes in ER-Positive Breast Cancer in Relation to Clinical Outcome", 2021, 11, 0),
    ("2-s2.0-85102886091", "Artificial intelligence: Deep learning in oncological radiomics and challenges of interpretability and data harmonization", 2021, 55, 1),
    ("2-s2.0-85103515923", "Quantitative PET in the 2020s: A roadmap", 2021, 23, 0),
    ("2-s2.0-85103937126", "Virtual reality and artificial intelligence for 3-dimensional planning of lung segmentectomies", 2021, 22, 0),
    ("2-s2.0-85104847620", "Artificial Intelligence-based methods in head and neck cancer diagnosis: an overview", 2021, 26, 0),
    ("2-s2.0-85108124165", "Global evolution of research on pulmonary nodules: A bibliometric analysis", 2021, 2, 0),
    ("2-s2.0-85111942180", "The constantly evolving role of medical image processing in oncology: From traditional medical image processing to imaging biomarkers and radiomics", 2021, 2, 1),
    ("2-s2.0-85116348283", "Automatic contour segmentation of cervical cancer using artificial intelligence", 2021, 7, 0),
    ("2-s2.0-85121865792", "The Digital Twin: Modular Model-Based Approach to Personalized Medicine", 2021, 2, 0),
    ("2-s2.0-85119477680", "Malignant Melanoma and Atypical Nevus Classification Using Machine Learning with Shape and Assymmetric Features", 2021, 1, 1),
    ("2-s2.0-85117052739", "Radiomics in oncology: A practical guide", 2021, 67, 0),
    ("2-s2.0-85114341702", "Artificial intelligence in radiation oncology: A review of its current status and potential application for the radiotherapy workforce", 2021, 10, 0),
    ("2-s2.0-85111119804", "Artificial Intelligence in Cancer Care: Legal and Regulatory Dimensions", 2021, 2, 0),
    ("2-s2.0-85124348701", "Model for Estimating the Heterogeneity of the Distribution of Globule Characteristics in Images of Skin Neoplasms", 2021, 1, 0),
    ("2-s2.0-85135422352", "Abdominal Computed Tomography Enhanced Image Features under an Automatic Segmentation Algorithm in Identification of Gastric Cancer and Gastric Lymphoma", 2022, 0, 1),
    ("2-s2.0-85121330341", "MRI radiomics-based machine learning classification of atypical cartilaginous tumour and grade II chondrosarcoma of long bones", 2022, 17, 0),
    ("2-s2.0-85125337919", "Artificial intelligence-based classification of bone tumors in the proximal femur on plain radiographs: System development and validation", 2022, 4, 0),
    ("2-s2.0-85124261031", "Segmentation of skin lesions image based on U-Net ++", 2022, 3, 0),
    ("2-s2.0-85125529381", "Brain Tumor Imaging: Applications of Artificial Intelligence", 2022, 4, 1),
    ("2-s2.0-85137378624", "Profiling the most highly cited scholars from China: Who they are. To what extent they are interdisciplinary", 2022, 0, 1),
    ("2-s2.0-85135382796", "Clinical Validation of a Deep-Learning Segmentation Software in Head and Neck: An Early Analysis in a Developing Radiation Oncology Center", 2022, 4, 0),
    ("2-s2.0-85113512614", "Radiomics: a primer on high-throughput image phenotyping", 2022, 20, 0),
    ("2-s2.0-85131873486", "Clinical application of deep learning-based synthetic CT from real MRI to improve dose planning accuracy in Gamma Knife radiosurgery: a proof of concept study", 2022, 0, 0),
    ("2-s2.0-85124549532", "BLSNet: Skin lesion detection and classification using broad learning system with incremental learning algorithm", 2022, 3, 1),
    ("2-s2.0-85139515590", "Fully Automated, Semantic Segmentation of Whole-Body 18F-FDG PET/CT Images Based on Data-Centric Artificial Intelligence", 2022, 3, 0),
    ("2-s2.0-85134588716", "A deep image-to-image network organ segmentation algorithm for radiation treatment planning: principles and evaluation", 2022, 2, 0),
    ("2-s2.0-85159074452", "Detection of Melanomas Using Ensembles of Deep Convolutional Neural Networks", 2023, 0, 0),
    ("2-s2.0-85148402129", "Transfer learning with different modified convolutional neural network models for classifying digital mammograms utilizing Local Dataset", 2023, 0, 1),
    ("2-s2.0-85146500215", "Neural Network in the Analysis of the MR Signal as an Image Segmentation Tool for the Determination of T1 and T2 Relaxation Times with Application to Cancer Cell Culture", 2023, 0, 0),
    ("2-s2.0-85146428707", "Intraclass Clustering-Based CNN Approach for Detection of Malignant Melanoma", 2023, 0, 0),
    ("2-s2.0-85144032371", "Unsupervised Learning Composite Network to Reduce Training Cost of Deep Learning Model for Colorectal Cancer Diagnosis", 2023, 0, 0),
    ("2-s2.0-85131537962", "Detecting skin lesions fusing handcrafted features in image network ensembles", 2023, 2, 0),
    ("2-s2.0-85152350497", "An IoMT-Based Melanoma Lesion Segmentation Using Conditional Generative Adversarial Networks", 2023, 0, 0),
    ("2-s2.0-85147848611", "Multi-strategy ant colony optimization for multi-level image segmentation: Case study of melanoma", 2023, 1, 1),
    ("2-s2.0-85144536545", "Application of 3D-reconstruction and artificial intelligence for complete mesocolic excision and D3 lymphadenectomy in colon cancer", 2023, 0, 1),
    ("2-s2.0-85148874931", "Detection of melanoma with hybrid learning method by removing hair from dermoscopic images using image processing techniques and wavelet transform", 2023, 0, 1),
]

# eid -> popularity value as printed in the source table (reference
# year 2023, rounded to four decimals).

POPULARITY_PRINTED = {
    "2-s2.0-84918834255": 0.6, "2-s2.0-84902660528": 0.3, "2-s2.0-84902106481": 0.8,
    "2-s2.0-84891153909": 6.7, "2-s2.0-84921642433": 2.7, "2-s2.0-84948392681": 0.6667,
    "2-s2.0-84944318438": 1.0, "2-s2.0-84983425726": 0.4444, "2-s2.0-84961903068": 1.1111,
    "2-s2.0-84988890309": 2.125, "2-s2.0-84981719831": 2.625, "2-s2.0-84960402804": 0.0,
    "2-s2.0-84954436777": 1.625, "2-s2.0-84964265510": 0.0, "2-s2.0-84962792167": 1.125,
    "2-s2.0-84994285804": 1.75, "2-s2.0-84963804529": 6.0, "2-s2.0-84976426664": 4.125,
    "2-s2.0-85038823793": 0.5714, "2-s2.0-85028633382": 3.2857, "2-s2.0-85021253325": 1.7143,
    "2-s2.0-85015305877": 1.1429, "2-s2.0-85018542177": 2.7143, "2-s2.0-85020287797": 9.1429,
    "2-s2.0-85021849026": 13.0, "2-s2.0-85019985302": 3.2857, "2-s2.0-85039989899": 1.1429,
    "2-s2.0-85039912655": 0.7143, "2-s2.0-85036544923": 1.4286, "2-s2.0-85042474953": 0.2857,
    "2-s2.0-85103213412": 0.0, "2-s2.0-85042927927": 10.0, "2-s2.0-85050502789": 2.0,
    "2-s2.0-85042181700": 4.0, "2-s2.0-85074209854": 0.0, "2-s2.0-85048760650": 4.1667,
    "2-s2.0-85060645376": 0.0, "2-s2.0-85059759729": 1.2, "2-s2.0-85056306068": 3.0,
    "2-s2.0-85055963110": 1.2, "2-s2.0-85054192769": 5.8, "2-s2.0-85077975055": 0.8,
    "2-s2.0-85073726145": 0.2, "2-s2.0-85099879408": 3.75, "2-s2.0-85091193990": 0.0,
    "2-s2.0-85086354606": 0.5, "2-s2.0-85081629940": 0.0, "2-s2.0-85075297765": 12.5,
    "2-s2.0-85086182046": 0.25, "2-s2.0-85082062276": 20.5, "2-s2.0-85084500870": 7.25,
    "2-s2.0-85093943094": 4.5, "2-s2.0-85123369429": 0.0, "2-s2.0-85123014841": 1.6667,
    "2-s2.0-85107175102": 4.6667, "2-s2.0-85138248078": 2.6667, "2-s2.0-85096782074": 3.6667,
    "2-s2.0-85102886091": 18.3333, "2-s2.0-85103515923": 7.6667, "2-s2.0-85103937126": 7.3333,
    "2-s2.0-85104847620": 8.6667, "2-s2.0-85108124165": 0.6667, "2-s2.0-85111942180": 0.6667,
    "2-s2.0-85116348283": 2.3333, "2-s2.0-85121865792": 0.6667, "2-s2.0-85119477680": 0.3333,
    "2-s2.0-85117052739": 22.3333, "2-s2.0-85114341702": 3.3333, "2-s2.0-85111119804": 0.6667,
    "2-s2.0-85124348701": 0.3333, "2-s2.0-85135422352": 0.0, "2-s2.0-85121330341": 8.5,
    "2-s2.0-85125337919": 2.0, "2-s2.0-85124261031": 1.5, "2-s2.0-85125529381": 2.0,
    "2-s2.0-85137378624": 0.0, "2-s2.0-85135382796": 2.0, "2-s2.0-85113512614": 10.0,
    "2-s2.0-85131873486": 0.0, "2-s2.0-85124549532": 1.5, "2-s2.0-85139515590": 1.5,
    "2-s2.0-85134588716": 1.0, "2-s2.0-85159074452": 0.0, "2-s2.0-85148402129": 0.0,
    "2-s2.0-85146500215": 0.0, "2-s2.0-85146428707": 0.0, "2-s2.0-85144032371": 0.0,
    "2-s2.0-85131537962": 2.0, "2-s2.0-85152350497": 0.0, "2-s2.0-85147848611": 1.0,
    "2-s2.0-85144536545": 0.0, "2-s2.0-85148874931": 0.0,
}

# Papers that apply a method successfully without naming it in
# title/abstract (kept in the pool, invisible to extraction trends).
INCLUDED_GENERAL = [
    "2-s2.0-84902660528",
    "2-s2.0-84891153909",
    "2-s2.0-84960402804",
    "2-s2.0-84964265510",
    "2-s2.0-84954436777",
    "2-s2.0-85038823793",
    "2-s2.0-85020287797",
    "2-s2.0-85086354606",
    "2-s2.0-85103937126",
    "2-s2.0-85138248078",
    "2-s2.0-85144536545",
    "2-s2.0-85077975055",
]

# --- extraction outputs (initial prompt) and manual ground truth ------
# eid -> list of method names the completion backend returned.

EXTRACTIONS = {
    "2-s2.0-84918834255": ["Paraconsistent Artificial Neural Network (PANN)"],
    "2-s2.0-84902106481": ["Kernel-based metric", "Hilbert-Schmidt independence criterion (HSIC)", "reproducing kernel Hilbert space (RKHS)", "k-nearest-neighbor (k-NN) classifier"],
    "2-s2.0-84921642433": ["Artificial Neural Network", "Genetic Algorithm"],
    "2-s2.0-84948392681": ["Connected Component Labelling", "K-Means", "Morphological Filter"],
    "2-s2.0-84944318438": ["Artificial Neural Networks"],
    "2-s2.0-84983425726": ["Probabilistic Neural Network Classifier", "Dull Razor algorithm", "Level Sets", "Automated Thresholding Approach"],
    "2-s2.0-84961903068": ["Support Vector Machine"],
    "2-s2.0-84988890309": ["Machine learning", "Image processing", "Random Forests", "Sparse Coding"],
    "2-s2.0-84962792167": ["Supervised classification", "Multi-Layer Feed-forward Neural Network", "Genetically Optimized Fuzzy C-means clustering"],
    "2-s2.0-84994285804": ["Support Vector Machine (SVM)", "Sequential Minimal Optimization (SMO)"],
    "2-s2.0-84963804529": ["Artificial Neural Networks", "Logistic Regression", "LIPU"],
    "2-s2.0-84976426664": ["Supervised Machine Learning", "Decision Trees"],
    "2-s2.0-85018542177": ["Neural Network based classification", "Shape Characterization", "Color and Texture Features"],
    "2-s2.0-85019985302": ["Probabilistic Neural Network (PNN)", "Exhaustive Search", "Features Selection", "Leave-one-out (LOO)", "External Cross-validation (ECV)"],
    "2-s2.0-85039989899": ["Neural Networks"],
    "2-s2.0-85039912655": ["Artificial Neural Network", "Learning Algorithm"],
    "2-s2.0-85042474953": ["Pattern recognition", "Adaptive thresholding", "Morphological operators", "Texture features", "Color features"],
    "2-s2.0-85050502789": ["Machine Learning", "k-Nearest Neighbors"],
    "2-s2.0-85042181700": ["Support Vector Machine", "Random Forest", "Neural Network", "Fast Discriminative Mixed-Membership-Based Naive Bayesian Classifiers"],
    "2-s2.0-85074209854": ["GLCM", "SVM"],
    "2-s2.0-85048760650": ["Machine Learning", "Digital Image Processing", "Feature Selection"],
    "2-s2.0-85060645376": ["Gabor filtering", "Local Mesh Patterns"],
    "2-s2.0-85059759729": ["Machine learning algorithms", "Support Vector Machines"],
    "2-s2.0-85073726145": ["Connectionism", "Logics", "Neural Networks", "General Adversial Networks", "Deep Learning"],
    "2-s2.0-85099879408": ["Perceptron", "Color Local Binary Patterns", "Color Histograms of Oriented Gradients", "Generative Adversarial Network", "ABCD Rule", "ResNet", "AlexNet", "Back-Propagation Perceptron"],
    "2-s2.0-85091193990": ["Artificial Intelligence", "Deep Learning"],
    "2-s2.0-85081629940": ["Support Vector Machines"],
    "2-s2.0-85086182046": ["Computer Vision", "Clustering", "Neural Networks"],
    "2-s2.0-85082062276": ["Deep learning"],
    "2-s2.0-85084500870": ["Deep learning"],
    "2-s2.0-85093943094": ["Machine Learning", "Linear Discriminant Analysis"],
    "2-s2.0-85123369429": ["U-Net", "Deep Learning", "Image Segmentation", "Artificial Intelligence"],
    "2-s2.0-85123014841": [],
    "2-s2.0-85107175102": ["Artificial Neural Network (ANNs)", "Local Binary Pattern (LBP)", "Gray Level Co-occurrence Matrix (GLCM)", "Convolutional Neural Network (CNNs)", "AlexNet", "ResNet50"],
    "2-s2.0-85096782074": ["Deep learning", "Image registration", "Deep learning-based nucleus detection"],
    "2-s2.0-85108124165": ["Deep Learning", "Artificial Intelligence", "Machine Learning"],
    "2-s2.0-85116348283": ["2D U-Net", "3D U-Net"],
    "2-s2.0-85119477680": ["SVM", "KNN", "Ensemble Learning"],
    "2-s2.0-85135422352": ["OTSU threshold segmentation", "artificial intelligence algorithms"],
    "2-s2.0-85121330341": ["Extra Trees Classifier", "Machine Learning"],
    "2-s2.0-85125337919": ["Convolutional Neural Network (CNN) algorithms"],
    "2-s2.0-85124261031": ["Fully Connected Networks (FCNs)", "U-Net"],
    "2-s2.0-85135382796": ["Deep-learning", "auto-segmentation"],
    "2-s2.0-85131873486": ["Deep learning", "Convolution algorithm"],
    "2-s2.0-85124549532": ["Deep Learning (DL)", "Broad Learning System (BLS)", "Incremental Learning Algorithm"],
    "2-s2.0-85134588716": ["Deep Reinforcement Learning", "Deep Image-to-Image Network (DI2IN)", "Convolutional Encoder-Decoder Architecture", "Multi-Level Feature Concatenation"],
    "2-s2.0-85159074452": ["Deep Convolutional Neural Networks", "Fusion of the decisions of several neural networks", "Horizontal Voting"],
    "2-s2.0-85148402129": ["Transfer learning", "Convolutional Neural Network", "Machine Learning Algorithms", "Contrast Limited Adaptive Histogram Equalization (CLAHE)", "Data Augmentation", "NASNetLarge", "DenseNet169", "InceptionResNetV2"],
    "2-s2.0-85146500215": ["Neural Networks", "Deep Learning"],
    "2-s2.0-85146428707": ["Artificial Intelligence (AI)", "Convolutional Neural Network (CNN)", "Intraclass Clustering"],
    "2-s2.0-85144032371": ["Unsupervised Learning", "K-means Clustering Algorithm", "Deep Learning"],
    "2-s2.0-85131537962": ["Artificial Intelligence", "Deep Learning", "EfficientNets", "Artificial Neural Network", "Majority Soft Voting"],
    "2-s2.0-85152350497": ["Artificial Intelligence", "Deep Learning", "Conditional Generative Adversarial Network (cGAN)"],
    "2-s2.0-85147848611": ["Ant Colony Optimization", "Sine Cosine Strategy", "Disperse Foraging Strategy", "Specular Reflection Learning Strategy", "Non-Local Mean Strategy", "2D Kapur's Entropy Strategy"],
    "2-s2.0-85148874931": ["Artificial Intelligence", "Deep Learning", "Machine Learning"],
}

# eid -> manually produced method list. An entry may be a plain string or
# (method, [aliases]) when the manual matcher accepted a differently
# worded extraction for that method.

GROUND_TRUTH = {
    "2-s2.0-84918834255": ["Paraconsistent Artificial Neural Network (PANN)"],
    "2-s2.0-84902106481": ["Hilbert-Schmidt independence criterion (HSIC)", "reproducing kernel Hilbert space (RKHS)", "k-nearest neighbor (k-NN) classifier"],
    "2-s2.0-84921642433": ["Artificial neural network", "genetic algorithm"],
    "2-s2.0-84948392681": ["Connected component labelling", "K-means", "morphological filter"],
    "2-s2.0-84944318438": ["Artificial neural network"],
    "2-s2.0-84983425726": ["Dull Razor algorithm", "Probabilistic Neural Network Classifier"],
    "2-s2.0-84961903068": ["Support Vector Machine"],
    "2-s2.0-84988890309": ["Random Forests", "Sparse Coding", "SIFT"],
    "2-s2.0-84962792167": ["Multi-Layer Feed-forward Neural Network", "Genetically Optimized Fuzzy C-means clustering"],
    "2-s2.0-84994285804": ["Support Vector Machine (SVM)", "Sequential Minimal Optimization (SMO)"],
    "2-s2.0-84963804529": ["Artificial neural networks", "Logistic regression", "Logistic regression using Initial variables and Product Units (LIPU)"],
    "2-s2.0-84976426664": ["Decision tree"],
    "2-s2.0-85018542177": [("Neural network classifier", ["Neural Network based classification"]), "semantic analysis"],
    "2-s2.0-85019985302": [("Probabilistic Neural Network (PNN) classifier", ["Probabilistic Neural Network (PNN)"]), "leave-one-out (LOO)", "external cross-validation (ECV)"],
    "2-s2.0-85039989899": ["Neural networks"],
    "2-s2.0-85039912655": ["Artificial Neural Network"],
    "2-s2.0-85042474953": ["Pattern recognition", "Adaptive thresholding"],
    "2-s2.0-85050502789": [("k-Nearest Neighbors algorithm", ["k-Nearest Neighbors"])],
    "2-s2.0-85042181700": ["Support vector machine", "random forest", "neural network", "fast discriminative mixed-membership-based naive Bayesian classifiers", "information theory"],
    "2-s2.0-85074209854": ["SVM", "GLCM"],
    "2-s2.0-85048760650": ["Decision tree"],
    "2-s2.0-85060645376": ["Gabor filtering", "Local mesh patterns"],
    "2-s2.0-85059759729": ["Support vector machines"],
    "2-s2.0-85073726145": ["Neural network", "General adversial networks", "deep learning"],
    "2-s2.0-85099879408": ["Neural network", "perceptron", "generative adversarial network", "ResNet", "AlexNet", "back-propagation perceptron"],
    "2-s2.0-85091193990": ["Deep learning"],
    "2-s2.0-85081629940": ["Support vector machines"],
    "2-s2.0-85086182046": ["Computer Vision", "Clustering", "Neural Networks"],
    "2-s2.0-85082062276": ["Deep learning"],
    "2-s2.0-85084500870": ["Deep learning"],
    "2-s2.0-85093943094": ["Linear Discriminant Analysis"],
    "2-s2.0-85123369429": ["U-Net", "Deep learning"],
    "2-s2.0-85123014841": ["CNN"],
    "2-s2.0-85107175102": ["Deep learning", "active contour method", "Local Binary Pattern (LBP)", "Gray Level Co-occurrence Matrix (GLCM)", "artificial neural network (ANNs)", "convolutional neural network (CNNs)", "AlexNet", "ResNet50"],
    "2-s2.0-85096782074": ["Deep learning", "Image registration"],
    "2-s2.0-85108124165": ["Deep learning"],
    "2-s2.0-85116348283": ["2D U-Net", "3D U-Net"],
    "2-s2.0-85119477680": ["SVM", "KNN", "ensemble learning"],
    "2-s2.0-85135422352": [("OTSU", ["OTSU threshold segmentation"])],
    "2-s2.0-85121330341": ["Extra Trees Classifier"],
    "2-s2.0-85125337919": [("Convolutional neural network (CNN)", ["Convolutional Neural Network (CNN) algorithms"])],
    "2-s2.0-85124261031": ["U-Net", "fully connected networks (FCNs)", "U-Net++"],
    "2-s2.0-85135382796": ["Deep learning"],
    "2-s2.0-85131873486": ["Deep learning", "Convolution algorithm"],
    "2-s2.0-85124549532": ["Deep learning", "incremental learning algorithm"],
    "2-s2.0-85134588716": ["Deep reinforcement learning", "convolutional encoder-decoder architecture", "multi-level feature concatenation"],
    "2-s2.0-85159074452": ["Deep convolutional neural networks", ("horizontal voting ensemble", ["Horizontal Voting"])],
    "2-s2.0-85148402129": ["Transfer learning", "convolutional neural network", "NASNetLarge", "DenseNet169", "InceptionResNetV2", "data augmentation", "fine tuning"],
    "2-s2.0-85146500215": ["Neural network", "deep learning"],
    "2-s2.0-85146428707": ["Convolutional neural network (CNN)", "Intraclass Clustering"],
    "2-s2.0-85144032371": ["Deep learning", ("K-means clustering", ["K-means Clustering Algorithm"])],
    "2-s2.0-85131537962": ["Deep learning", "EfficientNets", "artificial neural network", "ensemble learning", "majority soft voting", "transfer learning"],
    "2-s2.0-85152350497": ["Conditional Generative Adversarial Network (cGAN)", ("generative deep learning", ["Deep Learning"])],
    "2-s2.0-85147848611": ["Ant colony optimization"],
    "2-s2.0-85148874931": ["Deep learning"],
}

# Project-level general terms: method names that are correct but too
# generic to count as a find. Matched whole-name only (the seeded
# high-level phrases and the scheme keywords match by containment).
GENERAL_EXACT = [
    "supervised classification",
    "unsupervised learning",
    "image segmentation",
    "learning algorithm",
]

# eid -> (total_manual, true_found, false_found, missing, true_general)
DETERMINANTS = {
    "2-s2.0-84918834255": (1, 1, 0, 0, 0),
    "2-s2.0-84902106481": (3, 3, 1, 0, 0),
    "2-s2.0-84921642433": (2, 2, 0, 0, 0),
    "2-s2.0-84948392681": (3, 3, 0, 0, 0),
    "2-s2.0-84944318438": (1, 1, 0, 0, 0),
    "2-s2.0-84983425726": (2, 2, 2, 0, 0),
    "2-s2.0-84961903068": (1, 1, 0, 0, 0),
    "2-s2.0-84988890309": (3, 2, 0, 1, 2),
    "2-s2.0-84962792167": (2, 2, 0, 0, 1),
    "2-s2.0-84994285804": (2, 2, 0, 0, 0),
    "2-s2.0-84963804529": (3, 3, 0, 0, 0),
    "2-s2.0-84976426664": (1, 1, 0, 0, 1),
    "2-s2.0-85018542177": (2, 1, 2, 1, 0),
    "2-s2.0-85019985302": (3, 3, 2, 0, 0),
    "2-s2.0-85039989899": (1, 1, 0, 0, 0),
    "2-s2.0-85039912655": (1, 1, 0, 0, 1),
    "2-s2.0-85042474953": (2, 2, 3, 0, 0),
    "2-s2.0-85050502789": (1, 1, 0, 0, 1),
    "2-s2.0-85042181700": (5, 4, 0, 1, 0),
    "2-s2.0-85074209854": (2, 2, 0, 0, 0),
    "2-s2.0-85048760650": (1, 0, 1, 1, 2),
    "2-s2.0-85060645376": (2, 2, 0, 0, 0),
    "2-s2.0-85059759729": (1, 1, 0, 0, 1),
    "2-s2.0-85073726145": (3, 3, 2, 0, 0),
    "2-s2.0-85099879408": (6, 5, 3, 1, 0),
    "2-s2.0-85091193990": (1, 1, 0, 0, 1),
    "2-s2.0-85081629940": (1, 1, 0, 0, 0),
    "2-s2.0-85086182046": (3, 3, 0, 0, 0),
    "2-s2.0-85082062276": (1, 1, 0, 0, 0),
    "2-s2.0-85084500870": (1, 1, 0, 0, 0),
    "2-s2.0-85093943094": (1, 1, 0, 0, 1),
    "2-s2.0-85123369429": (2, 2, 0, 0, 2),
    "2-s2.0-85123014841": (1, 0, 0, 1, 0),
    "2-s2.0-85107175102": (8, 6, 0, 2, 0),
    "2-s2.0-85096782074": (2, 2, 1, 0, 0),
    "2-s2.0-85108124165": (1, 1, 0, 0, 2),
    "2-s2.0-85116348283": (2, 2, 0, 0, 0),
    "2-s2.0-85119477680": (3, 3, 0, 0, 0),
    "2-s2.0-85135422352": (1, 1, 0, 0, 1),
    "2-s2.0-85121330341": (1, 1, 0, 0, 1),
    "2-s2.0-85125337919": (1, 1, 0, 0, 0),
    "2-s2.0-85124261031": (3, 2, 0, 1, 0),
    "2-s2.0-85135382796": (1, 1, 1, 0, 0),
    "2-s2.0-85131873486": (2, 2, 0, 0, 0),
    "2-s2.0-85124549532": (2, 2, 1, 0, 0),
    "2-s2.0-85134588716": (3, 3, 1, 0, 0),
    "2-s2.0-85159074452": (2, 2, 1, 0, 0),
    "2-s2.0-85148402129": (7, 6, 1, 1, 1),
    "2-s2.0-85146500215": (2, 2, 0, 0, 0),
    "2-s2.0-85146428707": (2, 2, 0, 0, 1),
    "2-s2.0-85144032371": (2, 2, 0, 0, 1),
    "2-s2.0-85131537962": (6, 4, 0, 2, 1),
    "2-s2.0-85152350497": (2, 2, 0, 0, 1),
    "2-s2.0-85147848611": (1, 1, 5, 0, 0),
    "2-s2.0-85148874931": (1, 1, 0, 0, 2),
}

# --- curated clusters (manual classification) --------------------------
# label -> [(extracted mention name, eid), ...]; mentions not listed here
# were discarded during cluster curation.

CLUSTER_PLAN = [
    ("Class 1", [
        ("Paraconsistent Artificial Neural Network (PANN)", "2-s2.0-84918834255"),
        ("Artificial Neural Network", "2-s2.0-84921642433"),
        ("Artificial Neural Networks", "2-s2.0-84944318438"),
        ("Artificial Neural Networks", "2-s2.0-84963804529"),
        ("Artificial Neural Network", "2-s2.0-85039912655"),
        ("Artificial Neural Network (ANNs)", "2-s2.0-85107175102"),
        ("Artificial Neural Network", "2-s2.0-85131537962"),
        ("Probabilistic Neural Network Classifier", "2-s2.0-84983425726"),
        ("Probabilistic Neural Network (PNN)", "2-s2.0-85019985302"),
        ("Multi-Layer Feed-forward Neural Network", "2-s2.0-84962792167"),
        ("Neural Network based classification", "2-s2.0-85018542177"),
        ("Neural Networks", "2-s2.0-85039989899"),
        ("Neural Network", "2-s2.0-85042181700"),
        ("Neural Networks", "2-s2.0-85073726145"),
        ("Neural Networks", "2-s2.0-85086182046"),
        ("Neural Networks", "2-s2.0-85146500215"),
        ("Perceptron", "2-s2.0-85099879408"),
        ("Back-Propagation Perceptron", "2-s2.0-85099879408"),
        ("Fully Connected Networks (FCNs)", "2-s2.0-85124261031"),
    ]),
    ("Class 2", [
        ("Deep Learning", "2-s2.0-85073726145"),
        ("Deep Learning", "2-s2.0-85091193990"),
        ("Deep learning", "2-s2.0-85082062276"),
        ("Deep learning", "2-s2.0-85084500870"),
        ("Deep Learning", "2-s2.0-85123369429"),
        ("Deep learning", "2-s2.0-85096782074"),
        ("Deep Learning", "2-s2.0-85108124165"),
        ("Deep-learning", "2-s2.0-85135382796"),
        ("Deep learning", "2-s2.0-85131873486"),
        ("Deep Learning (DL)", "2-s2.0-85124549532"),
        ("Deep Learning", "2-s2.0-85146500215"),
        ("Deep Learning", "2-s2.0-85144032371"),
        ("Deep Learning", "2-s2.0-85131537962"),
        ("Deep Learning", "2-s2.0-85152350497"),
        ("Deep Learning", "2-s2.0-85148874931"),
        ("General Adversial Networks", "2-s2.0-85073726145"),
        ("Generative Adversarial Network", "2-s2.0-85099879408"),
        ("ResNet", "2-s2.0-85099879408"),
        ("ResNet50", "2-s2.0-85107175102"),
        ("AlexNet", "2-s2.0-85099879408"),
        ("AlexNet", "2-s2.0-85107175102"),
        ("U-Net", "2-s2.0-85123369429"),
        ("U-Net", "2-s2.0-85124261031"),
        ("Convolutional Neural Network (CNNs)", "2-s2.0-85107175102"),
        ("Convolutional Neural Network (CNN) algorithms", "2-s2.0-85125337919"),
        ("Convolutional Neural Network (CNN)", "2-s2.0-85146428707"),
        ("Convolutional Neural Network", "2-s2.0-85148402129"),
        ("2D U-Net", "2-s2.0-85116348283"),
        ("3D U-Net", "2-s2.0-85116348283"),
        ("Deep Reinforcement Learning", "2-s2.0-85134588716"),
        ("Convolutional Encoder-Decoder Architecture", "2-s2.0-85134588716"),
        ("Convolution algorithm", "2-s2.0-85131873486"),
        ("Deep Convolutional Neural Networks", "2-s2.0-85159074452"),
        ("NASNetLarge", "2-s2.0-85148402129"),
        ("DenseNet169", "2-s2.0-85148402129"),
        ("InceptionResNetV2", "2-s2.0-85148402129"),
        ("EfficientNets", "2-s2.0-85131537962"),
        ("Conditional Generative Adversarial Network (cGAN)", "2-s2.0-85152350497"),
    ]),
    ("Class 3", [
        ("Random Forests", "2-s2.0-84988890309"),
        ("Random Forest", "2-s2.0-85042181700"),
        ("Decision Trees", "2-s2.0-84976426664"),
        ("Extra Trees Classifier", "2-s2.0-85121330341"),
    ]),
    ("Class 4", [
        ("Genetic Algorithm", "2-s2.0-84921642433"),
        ("Sequential Minimal Optimization (SMO)", "2-s2.0-84994285804"),
        ("Ant Colony Optimization", "2-s2.0-85147848611"),
    ]),
    ("SVM", [
        ("Support Vector Machine", "2-s2.0-84961903068"),
        ("Support Vector Machine (SVM)", "2-s2.0-84994285804"),
        ("Support Vector Machine", "2-s2.0-85042181700"),
        ("Support Vector Machines", "2-s2.0-85059759729"),
        ("Support Vector Machines", "2-s2.0-85081629940"),
        ("SVM", "2-s2.0-85119477680"),
    ]),
    ("K-means", [
        ("K-Means", "2-s2.0-84948392681"),
        ("K-means Clustering Algorithm", "2-s2.0-85144032371"),
    ]),
    ("KNN", [
        ("k-nearest-neighbor (k-NN) classifier", "2-s2.0-84902106481"),
        ("k-Nearest Neighbors", "2-s2.0-85050502789"),
        ("KNN", "2-s2.0-85119477680"),
    ]),
    ("Logistic regression", [
        ("Logistic Regression", "2-s2.0-84963804529"),
        ("LIPU", "2-s2.0-84963804529"),
    ]),
    ("GLCM", [
        ("GLCM", "2-s2.0-85074209854"),
        ("Gray Level Co-occurrence Matrix (GLCM)", "2-s2.0-85107175102"),
    ]),
]

# Expected trend matrix with reference year 2023:
# label -> {year: (papers, relevancy_sum, popularity_sum)}; "all_time"
# equals the row sums.

TREND_EXPECTED = {
    "Class 1": {
        2014: (2, 1, 3.3), 2015: (2, 1, 1.4444), 2016: (2, 0, 7.125),
        2017: (4, 2, 7.8572), 2018: (1, 0, 4.0), 2019: (1, 0, 0.2),
        2020: (3, 3, 7.75), 2021: (1, 0, 4.6667), 2022: (1, 0, 1.5),
        2023: (2, 0, 2.0), "all_time": (19, 7, 39.8433),
    },
    "Class 2": {
        2014: (0, 0, 0.0), 2015: (0, 0, 0.0), 2016: (0, 0, 0.0),
        2017: (0, 0, 0.0), 2018: (0, 0, 0.0), 2019: (2, 0, 0.4),
        2020: (6, 4, 39.0), 2021: (9, 2, 23.0001), 2022: (8, 1, 9.0),
        2023: (13, 5, 4.0), "all_time": (38, 12, 75.4001),
    },
    "Class 3": {
        2014: (0, 0, 0.0), 2015: (0, 0, 0.0), 2016: (2, 1, 6.25),
        2017: (0, 0, 0.0), 2018: (1, 0, 4.0), 2019: (0, 0, 0.0),
        2020: (0, 0, 0.0), 2021: (0, 0, 0.0), 2022: (1, 0, 8.5),
        2023: (0, 0, 0.0), "all_time": (4, 1, 18.75),
    },
    "Class 4": {
        2014: (1, 1, 2.7), 2015: (0, 0, 0.0), 2016: (1, 0, 1.75),
        2017: (0, 0, 0.0), 2018: (0, 0, 0.0), 2019: (0, 0, 0.0),
        2020: (0, 0, 0.0), 2021: (0, 0, 0.0), 2022: (0, 0, 0.0),
        2023: (1, 1, 1.0), "all_time": (3, 2, 5.45),
    },
    "SVM": {
        2014: (0, 0, 0.0), 2015: (1, 0, 1.1111), 2016: (1, 0, 1.75),
        2017: (0, 0, 0.0), 2018: (1, 0, 4.0), 2019: (1, 0, 1.2),
        2020: (1, 1, 0.0), 2021: (1, 1, 0.3333), 2022: (0, 0, 0.0),
        2023: (0, 0, 0.0), "all_time": (6, 2, 8.3944),
    },
    "K-means": {
        2014: (0, 0, 0.0), 2015: (1, 0, 0.6667), 2016: (0, 0, 0.0),
        2017: (0, 0, 0.0), 2018: (0, 0, 0.0), 2019: (0, 0, 0.0),
        2020: (0, 0, 0.0), 2021: (0, 0, 0.0), 2022: (0, 0, 0.0),
        2023: (1, 0, 0.0), "all_time": (2, 0, 0.6667),
    },
    "KNN": {
        2014: (1, 0, 0.8), 2015: (0, 0, 0.0), 2016: (0, 0, 0.0),
        2017: (0, 0, 0.0), 2018: (1, 1, 2.0), 2019: (0, 0, 0.0),
        2020: (0, 0, 0.0), 2021: (1, 1, 0.3333), 2022: (0, 0, 0.0),
        2023: (0, 0, 0.0), "all_time": (3, 2, 3.1333),
    },
    "Logistic regression": {
        2014: (0, 0, 0.0), 2015: (0, 0, 0.0), 2016: (2, 0, 12.0),
        2017: (0, 0, 0.0), 2018: (0, 0, 0.0), 2019: (0, 0, 0.0),
        2020: (0, 0, 0.0), 2021: (0, 0, 0.0), 2022: (0, 0, 0.0),
        2023: (0, 0, 0.0), "all_time": (2, 0, 12.0),
    },
    "GLCM": {
        2014: (0, 0, 0.0), 2015: (0, 0, 0.0), 2016: (0, 0, 0.0),
        2017: (0, 0, 0.0), 2018: (1, 1, 0.0), 2019: (0, 0, 0.0),
        2020: (0, 0, 0.0), 2021: (1, 0, 4.6667), 2022: (0, 0, 0.0),
        2023: (0, 0, 0.0), "all_time": (2, 1, 4.6667),
    },
}

# Expected all-time orderings (groups of tied labels, best first).
RANKING_EXPECTED = {
    "papers": [["Class 2"], ["Class 1"], ["SVM"], ["Class 3"], ["Class 4", "KNN"],
               ["GLCM", "K-means", "Logistic regression"]],
    "relevancy": [["Class 2"], ["Class 1"], ["Class 4", "KNN", "SVM"],
                  ["Class 3", "GLCM"], ["K-means", "Logistic regression"]],
    "popularity": [["Class 2"], ["Class 1"], ["Class 3"], ["Logistic regression"],
                   ["SVM"], ["Class 4"], ["GLCM"], ["KNN"], ["K-means"]],
}

# --- prompts ------------------------------------------------------------

PROMPT_TEMPLATES = {
    "initial": "Extract the names of the artificial intelligence approaches used from the following text. ###{{document}}### \nA:",
    "prompt-1": "Just write the names of used artificial intelligence or machine learning methods in the following text. ###{{document}}### \nA:",
    "prompt-2": "Just write the names of used artificial intelligence methods in the following text. ###{{document}}### \nA:",
    "prompt-3": "Just write the names of artificial intelligence approaches used in the following text. ###{{document}}### \nA:",
    "prompt-4": "Extract names of the used artificial intelligence approaches from the following text. ###{{document}}### \nA:",
    "prompt-5": "Write the names of successfully applied artificial intelligence approaches in the following text. ###{{document}}### \nA:",
    "prompt-6": "Extract the names of artificial intelligence approaches employed in the following text. ###{{document}}### \nA:",
}

# Per-paper deltas of the prompt-4 run against the initial prompt:
# eid -> (methods the variant missed, methods the variant added).
# All other papers returned identical lists.

PROMPT4_CHANGES = {
    "2-s2.0-84944318438": ([], ["Image processing"]),
    "2-s2.0-84962792167": (["Supervised classification"], []),
    "2-s2.0-85018542177": (["Shape Characterization", "Color and Texture Features"], ["Feature Extraction"]),
    "2-s2.0-85050502789": ([], ["Image Processing", "Feature Extraction", "Segmentation", "Sequential Backward Selection", "Feature Selection"]),
    "2-s2.0-85059759729": ([], ["image processing techniques"]),
    "2-s2.0-85073726145": ([], ["Deduction", "Induction", "Abduction", "Radiomics", "Natural Language Processing", "Logics Based Systems"]),
    "2-s2.0-85081629940": ([], ["Artificial Intelligence"]),
    "2-s2.0-85082062276": ([], ["AI"]),
    "2-s2.0-85123369429": (["Image Segmentation"], ["AI"]),
    "2-s2.0-85107175102": ([], ["Deep Learning"]),
    "2-s2.0-85096782074": ([], ["tissue-type classification algorithm", "immunohistochemistry (IHC)"]),
    "2-s2.0-85125337919": ([], ["Deep Learning", "Receiver Operating Characteristic (ROC)"]),
    "2-s2.0-85124261031": (["U-Net"], ["U-Net++"]),
    "2-s2.0-85131537962": (["Artificial Intelligence", "Deep Learning"], ["Transfer Learning"]),
}

# Prompt comparison summary (diff word count, identical-article count)
# for all six variant prompts against the initial one.
PROMPT_SENSITIVITY_COUNTS = [
    ("prompt-1", 117, 12),
    ("prompt-2", 107, 16),
    ("prompt-3", 101, 15),
    ("prompt-4", 31, 41),
    ("prompt-5", 96, 18),
    ("prompt-6", 51, 34),
]

# --- query sensitivity ---------------------------------------------------
# (variant id, query text, total_found, papers shared with the initial pool)

INITIAL_QUERY = 'TITLE-ABS-KEY(("oncology") AND ("artificial intelligence" OR "AI") AND ("image processing")) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013'

QUERY_VARIANTS = [
    ("initial", INITIAL_QUERY, 92, 92),
    ("cancer", 'TITLE-ABS-KEY(("cancer") AND ("artificial intelligence" OR "AI") AND ("image processing")) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013', 746, 64),
    ("machine-learning", 'TITLE-ABS-KEY(("oncology") AND ("machine learning" OR "ML") AND ("image processing")) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013', 155, 53),
    ("braces", 'TITLE-ABS-KEY(({oncology}) AND ({artificial intelligence} OR {AI}) AND ({image processing})) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013', 92, 92),
    ("ai-long-form", 'TITLE-ABS-KEY(("oncology") AND ("artificial intelligence") AND ("image processing")) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013', 89, 89),
    ("ai-abbreviation", 'TITLE-ABS-KEY(("oncology") AND ("AI") AND ("image processing")) AND DOCTYPE(ar OR cp) AND PUBYEAR > 2013', 16, 16),
]

# --- other problem domains (pooled evaluation fixtures) -------------------
# domain -> (micro precision, recall, f1), [(tp, fp, fn) per paper]

DOMAIN_EVAL = {
    "oncology-nlp": (
        (0.6667, 0.9677, 0.7895),
        [(3, 1, 0), (2, 1, 0), (2, 2, 0), (1, 0, 0), (4, 1, 0), (2, 1, 1), (1, 2, 0),
         (3, 0, 0), (2, 1, 0), (1, 1, 0), (2, 2, 0), (3, 1, 0), (1, 0, 0), (2, 1, 0),
         (1, 1, 0)],
    ),
    "traffic-control": (
        (0.6026, 0.9216, 0.7287),
        [(2, 1, 0), (3, 2, 0), (1, 1, 0), (2, 1, 1), (4, 2, 0), (1, 0, 0), (2, 2, 0),
         (3, 1, 0), (2, 2, 1), (1, 1, 0), (2, 1, 0), (3, 2, 0), (1, 1, 0), (2, 1, 1),
         (4, 3, 0), (1, 0, 0), (2, 2, 0), (3, 1, 0), (2, 1, 1), (1, 1, 0), (2, 2, 0),
         (2, 2, 0), (1, 1, 0)],
    ),
    "satellite-imagery": (
        (0.7917, 0.9406, 0.8597),
        [(3, 1, 0)] * 16 + [(2, 0, 0)] * 10 + [(3, 1, 1)] * 6
        + [(2, 1, 0), (2, 1, 0), (2, 1, 0), (1, 0, 0), (2, 0, 0)],
    ),
}

# Pooled evaluation for the primary domain (sum of DETERMINANTS).
ONCOLOGY_MICRO = (0.6793, 0.9000, 0.7742)
ONCOLOGY_MACRO = (0.7111, 0.9226, 0.7775)
ONCOLOGY_POOLED_COUNTS = (108, 51, 12)

REFERENCE_YEAR = 2023


def included_eids() -> list[str]:
    return list(EXTRACTIONS)


def curation_for(eid: str) -> str:
    if eid in EXTRACTIONS:
        return "included"
    if eid in INCLUDED_GENERAL:
        return "included_general"
    return "excluded"


def ground_truth_methods(eid: str) -> list[str]:
    return [m[0] if isinstance(m, tuple) else m for m in GROUND_TRUTH[eid]]


def ground_truth_aliases(eid: str) -> dict[str, list[str]]:
    return {m[0]: list(m[1]) for m in GROUND_TRUTH[eid] if isinstance(m, tuple)}


def check_tables() -> None:
    """Internal consistency of the tables; the builder calls this first."""
    eids = [row[0] for row in POOL_ROWS]
    assert len(eids) == 92 and len(set(eids)) == 92
    assert set(POPULARITY_PRINTED) == set(eids)
    for eid, _title, year, citations, _rel in POOL_ROWS:
        exact = citations / (2023 - year + 1)
        assert abs(exact - POPULARITY_PRINTED[eid]) <= 1e-4, (eid, exact)
    assert set(EXTRACTIONS) <= set(eids) and len(EXTRACTIONS) == 55
    assert set(INCLUDED_GENERAL) <= set(eids) and len(INCLUDED_GENERAL) == 12
    assert not set(INCLUDED_GENERAL) & set(EXTRACTIONS)
    assert set(GROUND_TRUTH) == set(EXTRACTIONS) == set(DETERMINANTS)
    tp = sum(d[1] for d in DETERMINANTS.values())
    fp = sum(d[2] + d[4] for d in DETERMINANTS.values())
    fn = sum(d[3] for d in DETERMINANTS.values())
    assert (tp, fp, fn) == ONCOLOGY_POOLED_COUNTS, (tp, fp, fn)
    for eid, (total, true, _false, missing, _general) in DETERMINANTS.items():
        assert total == len(GROUND_TRUTH[eid]), eid
        assert missing == total - true, eid
    extraction_pairs = {
        (name, eid) for eid, names in EXTRACTIONS.items() for name in names
    }
    plan_pairs = [pair for _, pairs in CLUSTER_PLAN for pair in pairs]
    assert len(plan_pairs) == len(set(plan_pairs))
    for name, eid in plan_pairs:
        assert (name, eid) in extraction_pairs, (name, eid)
    for label, pairs in CLUSTER_PLAN:
        expected = TREND_EXPECTED[label]["all_time"][0]
        assert len(pairs) == expected, (label, len(pairs), expected)
    for eid, (removed, _added) in PROMPT4_CHANGES.items():
        for name in removed:
            assert name in EXTRACTIONS[eid], (eid, name)
    for domain, (metrics, rows) in DOMAIN_EVAL.items():
        tp = sum(r[0] for r in rows)
        fp = sum(r[1] for r in rows)
        fn = sum(r[2] for r in rows)
        precision = tp / (tp + fp)
        recall = tp / (tp + fn)
        f1 = 2 * precision * recall / (precision + recall)
        assert abs(precision - metrics[0]) <= 1e-4, (domain, precision)
        assert abs(recall - metrics[1]) <= 1e-4, (domain, recall)
        assert abs(f1 - metrics[2]) <= 1e-4, (domain, f1)


if __name__ == "__main__":
    check_tables()
    print("corpus tables consistent")
